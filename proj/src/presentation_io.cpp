#include "dwork/presentation_io.hpp"

#include "dwork/errors.hpp"
#include "dwork/parse.hpp"

namespace dwork {

using nlohmann::json;

namespace {

SuperMonomial monomial_from(const std::string& text, const ContextPtr& ctx) {
  const SuperElement e = parse(text, ctx);
  if (e.size() != 1 || !e.terms()[0].second.is_one()) throw InputError("expected a bare monomial, got '" + text + "'");
  return e.terms()[0].first;
}

}  // namespace

json export_presentation(const QuotientPresentation& P) {
  const VariableContext& ctx = *P.context();
  json doc;
  doc["format"] = kPresentationFormat;
  doc["version"] = kPresentationVersion;
  doc["context"] = {{"n", ctx.n()}, {"k", ctx.k()}, {"degrees", ctx.degrees()}};
  json G = json::array();
  for (const auto& g : P.dwork().G) G.push_back(render(g));
  doc["G"] = G;
  doc["backgroundCharge"] = P.background_charge();
  doc["slack"] = P.slack();

  json basis = json::array();
  for (std::size_t i = 0; i < P.dimension(); ++i)
    basis.push_back({{"monomial", render_monomial(ctx, P.basis()[i])}, {"weight", P.basis_weights()[i]}});
  doc["basis"] = basis;

  json stages = json::array();
  for (int w = 0; w <= P.top_weight() + P.slack(); ++w) {
    const auto st = P.stage(w);
    json columns = json::array();
    for (const auto& m : st->columns) columns.push_back(render_monomial(ctx, m));
    json pivots = json::array();
    for (std::size_t r = 0; r < st->rows.size(); ++r) {
      json row = json::array();
      for (const auto& [c, v] : st->rows[r]) row.push_back(json::array({c, v.pq()}));
      pivots.push_back({{"column", st->pivot_columns[r]}, {"row", row}, {"preimage", render(st->preimages[r])}});
    }
    stages.push_back({{"weight", w}, {"columns", columns}, {"pivots", pivots}, {"complement", st->complement}});
  }
  doc["stages"] = stages;
  return doc;
}

QuotientPresentation import_presentation(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kPresentationFormat) throw InputError("not a presentation document");
    if (doc.at("version").get<int>() != kPresentationVersion)
      throw InputError("unsupported presentation version " + doc.at("version").dump());
    const json& c = doc.at("context");
    const ContextPtr ctx =
        make_context(c.at("n").get<int>(), c.at("k").get<int>(), c.at("degrees").get<std::vector<int>>());
    std::vector<SuperElement> G;
    for (const auto& g : doc.at("G")) G.push_back(parse(g.get<std::string>(), ctx));
    DworkData D = dwork_potential(ctx, std::move(G));
    if (doc.at("backgroundCharge").get<int>() != ctx->background_charge())
      throw InputError("background charge does not match the context");

    std::vector<PresentationStage> stages;
    for (const auto& js : doc.at("stages")) {
      PresentationStage st;
      st.weight = js.at("weight").get<int>();
      for (const auto& m : js.at("columns")) st.columns.push_back(monomial_from(m.get<std::string>(), ctx));
      const int ncols = static_cast<int>(st.columns.size());
      for (const auto& p : js.at("pivots")) {
        const int pc = p.at("column").get<int>();
        if (pc < 0 || pc >= ncols) throw InputError("pivot column out of range");
        st.pivot_columns.push_back(pc);
        SparseRow row;
        for (const auto& e : p.at("row")) {
          const int col = e.at(0).get<int>();
          if (col < 0 || col >= ncols) throw InputError("row column out of range");
          row.emplace_back(col, Rational::parse(e.at(1).get<std::string>()));
        }
        st.rows.push_back(std::move(row));
        st.preimages.push_back(parse(p.at("preimage").get<std::string>(), ctx));
      }
      stages.push_back(std::move(st));
    }
    QuotientPresentation P = QuotientPresentation::from_stages(std::move(D), doc.at("slack").get<int>(), std::move(stages));

    const json& basis = doc.at("basis");
    if (basis.size() != P.dimension()) throw InputError("basis size does not match the stages");
    for (std::size_t i = 0; i < P.dimension(); ++i)
      if (monomial_from(basis[i].at("monomial").get<std::string>(), ctx) != P.basis()[i])
        throw InputError("basis entry " + std::to_string(i) + " does not match the stages");
    return P;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed presentation document: ") + e.what());
  }
}

}  // namespace dwork
