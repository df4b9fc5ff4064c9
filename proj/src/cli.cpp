#include "dwork/cli.hpp"

#include "dwork/errors.hpp"
#include "dwork/parse.hpp"
#include "dwork/presentation_io.hpp"
#include "dwork/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace dwork {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::string> pq_list(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.pq());
  return out;
}

json exact_matrix(const Matrix<Rational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).pq());
    rows.push_back(row);
  }
  return rows;
}

json period_json(const PeriodMatrix& pm) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m(0, 0))>;
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
          json row = json::array();
          for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<T, Rational>)
              row.push_back(m(i, j).pq());
            else if constexpr (std::is_same_v<T, double>)
              row.push_back(fmt::format("{}", m(i, j)));
            else
              row.push_back(json::array({fmt::format("{}", m(i, j).real()), fmt::format("{}", m(i, j).imag())}));
          }
          rows.push_back(row);
        }
        return rows;
      },
      pm);
}

std::string text_matrix(const json& rows, const std::string& indent) {
  std::string out;
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    out += indent + "[" + fmt::format("{}", fmt::join(cells, ", ")) + "]\n";
  }
  return out;
}

std::optional<SuperElement> parse_h(const Problem& pb) {
  if (!pb.config.h) return std::nullopt;
  return parse(*pb.config.h, pb.ctx);
}

DeformationData deformation_of(const Problem& pb) {
  if (!pb.config.H) throw InputError("config has no H entry");
  std::vector<SuperElement> H;
  for (const auto& s : *pb.config.H) H.push_back(parse(s, pb.ctx));
  return build_deformation(pb.D, std::move(H), pb.config.slack);
}

struct Output {
  std::ostream& stream;
  std::optional<std::string> path;

  void emit(const std::string& text) const {
    if (!path) {
      stream << text;
      return;
    }
    std::ofstream f(*path);
    if (!f) throw InputError("cannot write " + *path);
    f << text;
  }
};

std::string basis_report(const Problem& pb, bool as_json) {
  const QuotientPresentation& P = pb.P;
  const auto hodge = hodge_numbers(P);
  std::vector<int> cumulative;
  int run = 0;
  for (int h : hodge) cumulative.push_back(run += h);
  if (as_json) {
    json basis = json::array();
    for (std::size_t i = 0; i < P.dimension(); ++i)
      basis.push_back({{"monomial", render_monomial(*pb.ctx, P.basis()[i])}, {"weight", P.basis_weights()[i]}});
    json doc = {{"cG", P.background_charge()},
                {"dimension", P.dimension()},
                {"basis", basis},
                {"hodge", hodge},
                {"cumulative", cumulative}};
    return doc.dump(2) + "\n";
  }
  std::string out = fmt::format("c_G = {}\ndimension = {}\n", P.background_charge(), P.dimension());
  for (int w = 0; w <= P.top_weight(); ++w) {
    std::vector<std::string> mons;
    for (std::size_t i = 0; i < P.dimension(); ++i)
      if (P.basis_weights()[i] == w) mons.push_back(fmt::format("e{}={}", i + 1, render_monomial(*pb.ctx, P.basis()[i])));
    out += fmt::format("weight {}: {}\n", w, mons.empty() ? "-" : fmt::format("{}", fmt::join(mons, ", ")));
  }
  out += fmt::format("hodge = [{}]\ncumulative = [{}]\n", fmt::join(hodge, ", "), fmt::join(cumulative, ", "));
  return out;
}

std::string reduce_report(const Problem& pb, const std::string& poly, bool as_json) {
  const SuperElement f = parse(poly, pb.ctx);
  const int cg = pb.P.background_charge();
  for (const auto& comp : grade(f))
    if (comp.charge != cg)
      throw GradingError("input has charge " + std::to_string(comp.charge) + "; only the background charge " +
                         std::to_string(cg) + " carries cohomology");
  const ReductionResult r = pb.P.reduce(f);
  if (pb.P.combination(r.coefficients) + apply_k(pb.D, r.certificate) != f)
    throw InvariantViolation("reduction certificate does not reproduce the input");
  if (as_json) {
    json basis = json::array();
    for (const auto& m : pb.P.basis()) basis.push_back(render_monomial(*pb.ctx, m));
    json doc = {{"input", render(f)},
                {"basis", basis},
                {"coeffs", pq_list(r.coefficients)},
                {"certificate", render(r.certificate)}};
    return doc.dump(2) + "\n";
  }
  std::string out = fmt::format("input = {}\n", render(f));
  for (std::size_t i = 0; i < r.coefficients.size(); ++i)
    out += fmt::format("e{} ({}): {}\n", i + 1, render_monomial(*pb.ctx, pb.P.basis()[i]), r.coefficients[i].str());
  out += fmt::format("certificate = {}\n", render(r.certificate));
  return out;
}

struct DeformRun {
  DeformationData def;
  UBasis ub;
  DeformationSeries series;
  std::vector<Matrix<Rational>> ladder;
};

DeformRun run_deform(const Problem& pb, int order, SeriesScope scope) {
  if (order < 1) throw InputError("order must be at least 1");
  DeformationData def = deformation_of(pb);
  UBasis ub = u_basis(def, pb.P, *def.deformed_presentation, parse_h(pb));
  DeformationSeries series = t_series(def, pb.P, ub, order, scope);
  auto ladder = d_matrix(series);
  return {std::move(def), std::move(ub), std::move(series), std::move(ladder)};
}

std::string deform_report(const Problem& pb, const DeformRun& d, bool as_json) {
  std::vector<int> iprime;
  for (int i : d.def.Iprime) iprime.push_back(i + 1);
  if (as_json) {
    json ubasis = json::array();
    for (const auto& u : d.ub.u) ubasis.push_back(render(u));
    json series = json::array();
    for (const auto& t : d.series.terms)
      for (std::size_t rho = 0; rho < t.coefficients.size(); ++rho) {
        if (t.coefficients[rho].is_zero()) continue;
        series.push_back({{"rho", rho + 1},
                          {"exponent", t.exponent},
                          {"numerator", t.coefficients[rho].num().get_str()},
                          {"denominator", t.coefficients[rho].den().get_str()}});
      }
    json ladder = json::array();
    for (std::size_t m = 0; m < d.ladder.size(); ++m)
      ladder.push_back({{"order", m + 1}, {"matrix", exact_matrix(d.ladder[m])}});
    json doc = {{"Iprime", iprime},
                {"factor", render(d.ub.factor)},
                {"uBasis", ubasis},
                {"truncationOrder", d.series.order},
                {"series", series},
                {"dLadder", ladder}};
    return doc.dump(2) + "\n";
  }
  std::string out = fmt::format("I' = [{}]\nfactor = {}\n", fmt::join(iprime, ", "), render(d.ub.factor));
  for (std::size_t a = 0; a < d.ub.u.size(); ++a) out += fmt::format("u{} = {}\n", a + 1, render(d.ub.u[a]));
  out += fmt::format("series to order {}:\n", d.series.order);
  for (const auto& t : d.series.terms)
    for (std::size_t rho = 0; rho < t.coefficients.size(); ++rho)
      if (!t.coefficients[rho].is_zero())
        out += fmt::format("  T{} t^[{}] {}\n", rho + 1, fmt::join(t.exponent, ","), t.coefficients[rho].str());
  for (std::size_t m = 0; m < d.ladder.size(); ++m) {
    out += fmt::format("D at order {}:\n", m + 1);
    json mat = exact_matrix(d.ladder[m]);
    for (auto& row : mat)
      for (auto& c : row) c = Rational::parse(c.get<std::string>()).str();
    out += text_matrix(mat, "  ");
  }
  (void)pb;
  return out;
}

std::string transport_report(const DeformRun& d, const PeriodMatrix& omega, const BaseChange& B, bool as_json) {
  json orders = json::array();
  for (std::size_t m = 0; m < d.ladder.size(); ++m)
    orders.push_back({{"order", m + 1}, {"matrix", period_json(period_transport(d.ladder[m], omega, B))}});
  if (as_json) return json({{"transport", orders}}).dump(2) + "\n";
  std::string out;
  for (const auto& o : orders) {
    out += fmt::format("Omega(X_U) at order {}:\n", o.at("order").get<int>());
    json mat = o.at("matrix");
    for (auto& row : mat)
      for (auto& c : row)
        if (c.is_string() && c.get<std::string>().find('/') != std::string::npos)
          c = Rational::parse(c.get<std::string>()).str();
    out += text_matrix(mat, "  ");
  }
  return out;
}

std::string verify_report(const VerifyReport& rep, bool as_json) {
  if (as_json) {
    json fams = json::array();
    for (const auto& f : rep.families) {
      json j = {{"name", f.name}, {"checks", f.checks}, {"passed", f.passed}};
      if (!f.passed) j["counterexample"] = f.counterexample;
      fams.push_back(j);
    }
    return json({{"passed", rep.passed()}, {"families", fams}}).dump(2) + "\n";
  }
  std::string out;
  for (const auto& f : rep.families) {
    out += fmt::format("{} {} ({} checks)\n", f.passed ? "PASS" : "FAIL", f.name, f.checks);
    if (!f.passed) out += fmt::format("  counterexample: {}\n", f.counterexample);
  }
  out += rep.passed() ? "all invariant families passed\n" : "invariant failures detected\n";
  return out;
}

}  // namespace

JobConfig parse_config(const json& doc) {
  static const std::set<std::string> known = {"n", "k", "degrees", "G", "H", "truncationOrder", "monomialOrder",
                                              "h", "slack", "out"};
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw InputError("unknown config field '" + key + "'");
  try {
    JobConfig c;
    c.n = doc.at("n").get<int>();
    c.k = doc.at("k").get<int>();
    c.degrees = doc.at("degrees").get<std::vector<int>>();
    c.G = doc.at("G").get<std::vector<std::string>>();
    if (doc.contains("H")) c.H = doc.at("H").get<std::vector<std::string>>();
    if (doc.contains("truncationOrder")) c.truncation_order = doc.at("truncationOrder").get<int>();
    if (doc.contains("monomialOrder")) c.monomial_order = doc.at("monomialOrder").get<std::string>();
    if (doc.contains("h")) c.h = doc.at("h").get<std::string>();
    if (doc.contains("slack")) c.slack = doc.at("slack").get<int>();
    if (doc.contains("out")) c.out = doc.at("out").get<std::string>();
    if (static_cast<int>(c.degrees.size()) != c.k) throw InputError("degrees must list k entries");
    if (static_cast<int>(c.G.size()) != c.k) throw InputError("G must list k polynomials");
    if (c.H && static_cast<int>(c.H->size()) != c.k) throw InputError("H must list k polynomials");
    if (c.monomial_order && *c.monomial_order != "grlex")
      throw InputError("unsupported monomial order '" + *c.monomial_order + "'; only grlex is available");
    if (c.truncation_order < 1) throw InputError("truncationOrder must be at least 1");
    if (c.slack < 0) throw InputError("slack must be non-negative");
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed config: ") + e.what());
  }
}

JobConfig load_config(const std::string& path) { return parse_config(read_json_file(path)); }

Problem make_problem(const JobConfig& config) {
  ContextPtr ctx = make_context(config.n, config.k, config.degrees);
  std::vector<SuperElement> G;
  for (const auto& s : config.G) G.push_back(parse(s, ctx));
  DworkData D = dwork_potential(ctx, std::move(G));
  QuotientPresentation P(D, config.slack);
  return Problem{config, ctx, std::move(D), std::move(P)};
}

PeriodMatrix parse_period_matrix(const json& doc) {
  if (!doc.is_array() || doc.empty()) throw InputError("period matrix must be a nonempty array of rows");
  bool any_float = false, any_complex = false;
  for (const auto& row : doc) {
    if (!row.is_array() || row.size() != doc[0].size()) throw InputError("period matrix rows must have equal length");
    for (const auto& c : row) {
      if (c.is_array()) any_complex = true;
      else if (c.is_number_float()) any_float = true;
      else if (!c.is_string() && !c.is_number_integer()) throw InputError("unsupported period matrix entry " + c.dump());
    }
  }
  const std::size_t r = doc.size(), cn = doc[0].size();
  auto exact = [](const json& c) {
    return c.is_string() ? Rational::parse(c.get<std::string>()) : Rational(c.get<long>());
  };
  auto real = [&](const json& c) { return c.is_number_float() ? c.get<double>() : exact(c).to_double(); };
  if (any_complex) {
    Matrix<std::complex<double>> m(r, cn, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cn; ++j) {
        const json& c = doc[i][j];
        if (c.is_array()) {
          if (c.size() != 2) throw InputError("complex entries are [re, im] pairs");
          m(i, j) = {real(c[0]), real(c[1])};
        } else {
          m(i, j) = real(c);
        }
      }
    return m;
  }
  if (any_float) {
    Matrix<double> m(r, cn, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cn; ++j) m(i, j) = real(doc[i][j]);
    return m;
  }
  Matrix<Rational> m(r, cn, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cn; ++j) m(i, j) = exact(doc[i][j]);
  return m;
}

BaseChange parse_base_change(const json& doc) {
  BaseChange B;
  const json& rows = doc.is_object() ? doc.at("matrix") : doc;
  if (doc.is_object() && doc.contains("integral")) B.integral = doc.at("integral").get<bool>();
  PeriodMatrix pm = parse_period_matrix(rows);
  if (!std::holds_alternative<Matrix<Rational>>(pm)) throw InputError("base change entries must be exact");
  B.B = std::get<Matrix<Rational>>(pm);
  validate_base_change(B);
  return B;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Dwork-potential cohomology and deformation toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string format = "text";
  std::string out_path;
  std::optional<int> order;
  std::uint64_t seed = 1;
  int iterations = 200;
  bool corrupt = false;
  std::string poly, omega_path, base_path, scope = "full", check_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "job config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", out_path, "write the report here");
  };
  auto* basis = app.add_subcommand("basis", "quotient basis, Hodge numbers");
  common(basis);
  auto* reduce = app.add_subcommand("reduce", "normal form with certificate");
  common(reduce);
  reduce->add_option("--poly", poly, "element to reduce")->required();
  auto* deform = app.add_subcommand("deform", "u-basis, T series and D ladder");
  common(deform);
  deform->add_option("--order", order, "truncation order");
  deform->add_option("--scope", scope, "full or d-matrix")->check(CLI::IsMember({"full", "d-matrix"}));
  auto* transport = app.add_subcommand("transport", "period matrix transport along the D ladder");
  common(transport);
  transport->add_option("--order", order, "truncation order");
  transport->add_option("--omega", omega_path, "period matrix (JSON)")->required()->check(CLI::ExistingFile);
  transport->add_option("--base-change", base_path, "base change matrix (JSON)")->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify", "randomized invariant suites");
  common(verify);
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--iterations", iterations, "checks per family")->check(CLI::NonNegativeNumber);
  verify->add_flag("--corrupt-operator", corrupt)->group("");
  auto* pres = app.add_subcommand("presentation", "export the presentation document");
  common(pres);
  pres->add_option("--check", check_path, "re-import a document and compare")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const bool as_json = format == "json";
  try {
    const JobConfig cfg = load_config(config_path);
    Output sink{out, out_path.empty() ? cfg.out : std::optional<std::string>(out_path)};
    const int eff_order = order.value_or(cfg.truncation_order);
    if (eff_order < 1) throw InputError("order must be at least 1");
    const Problem pb = make_problem(cfg);

    if (basis->parsed()) {
      sink.emit(basis_report(pb, as_json));
    } else if (reduce->parsed()) {
      sink.emit(reduce_report(pb, poly, as_json));
    } else if (deform->parsed()) {
      const DeformRun d = run_deform(pb, eff_order, scope == "full" ? SeriesScope::Full : SeriesScope::DMatrix);
      sink.emit(deform_report(pb, d, as_json));
    } else if (transport->parsed()) {
      const PeriodMatrix omega = parse_period_matrix(read_json_file(omega_path));
      const DeformRun d = run_deform(pb, eff_order, SeriesScope::DMatrix);
      BaseChange B;
      B.B = Matrix<Rational>::identity(pb.P.dimension());
      if (!base_path.empty()) B = parse_base_change(read_json_file(base_path));
      sink.emit(transport_report(d, omega, B, as_json));
    } else if (verify->parsed()) {
      std::optional<DeformationData> def;
      if (cfg.H) def = deformation_of(pb);
      VerifyOptions vo{seed, iterations, corrupt};
      const VerifyReport rep = run_verify(pb.P, def ? &*def : nullptr, vo);
      sink.emit(verify_report(rep, as_json));
      if (!rep.passed()) return kExitInvariant;
    } else if (pres->parsed()) {
      const std::string doc = export_presentation(pb.P).dump(1) + "\n";
      if (!check_path.empty()) {
        const json stored = read_json_file(check_path);
        const std::string again = export_presentation(import_presentation(stored)).dump(1) + "\n";
        if (again != stored.dump(1) + "\n") throw InvariantViolation("presentation round trip is not bit-exact");
        if (again != doc) throw InputError("stored presentation differs from the one computed for this config");
        sink.emit("presentation round trip ok\n");
      } else {
        sink.emit(doc);
      }
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: parse error at line " << e.line() << ", column " << e.column() << ": " << e.message() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const AssumptionError& e) {
    err << "error: assumption failed: " << e.what() << "\n";
    return kExitAssumption;
  } catch (const std::exception& e) {
    err << "error: internal invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace dwork
