#include "dwork/context.hpp"

#include "dwork/errors.hpp"

#include <numeric>

namespace dwork {

VariableContext::VariableContext(int n, int k, std::vector<int> degrees) : n_(n), k_(k), degrees_(std::move(degrees)) {
  if (n < 0) throw InputError("n must be non-negative");
  if (k < 1) throw InputError("k must be at least 1");
  if (static_cast<int>(degrees_.size()) != k)
    throw InputError("expected " + std::to_string(k) + " degrees, got " + std::to_string(degrees_.size()));
  for (int d : degrees_)
    if (d <= 0) throw InputError("degrees must be positive");
  if (size() > kMaxVariables) throw InputError("at most 64 even variables are supported");
}

int VariableContext::background_charge() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), 0) - (n_ + 1);
}

int VariableContext::y_index(int i) const {
  if (i < 1 || i > k_) throw InputError("y index " + std::to_string(i) + " out of range 1.." + std::to_string(k_));
  return i - 1;
}

int VariableContext::x_index(int j) const {
  if (j < 0 || j > n_) throw InputError("x index " + std::to_string(j) + " out of range 0.." + std::to_string(n_));
  return k_ + j;
}

std::string VariableContext::q_name(int mu) const {
  return is_y(mu) ? "y" + std::to_string(mu + 1) : "x" + std::to_string(mu - k_);
}

std::string VariableContext::eta_name(int mu) const { return "e" + std::to_string(mu + 1); }

ContextPtr make_context(int n, int k, std::vector<int> degrees) {
  return std::make_shared<const VariableContext>(n, k, std::move(degrees));
}

}  // namespace dwork
