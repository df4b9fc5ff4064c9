#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dwork {

/// Variables q_1..q_N with q_1..q_k = y_1..y_k and q_{k+1}..q_N = x_0..x_n,
/// each paired with an odd variable eta_mu. Indices in this API are 0-based
/// unless a function says otherwise.
class VariableContext {
 public:
  static constexpr int kMaxVariables = 64;

  VariableContext(int n, int k, std::vector<int> degrees);

  int n() const { return n_; }
  int k() const { return k_; }
  int size() const { return n_ + k_ + 1; }
  const std::vector<int>& degrees() const { return degrees_; }

  bool is_y(int mu) const { return mu < k_; }
  int charge_of_q(int mu) const { return is_y(mu) ? -degrees_[mu] : 1; }
  int weight_of_q(int mu) const { return is_y(mu) ? 1 : 0; }
  int charge_of_eta(int mu) const { return -charge_of_q(mu); }
  int weight_of_eta(int mu) const { return 1 - weight_of_q(mu); }

  /// sum(d_i) - (n + 1)
  int background_charge() const;

  int y_index(int i) const;  // y_i, 1-based i
  int x_index(int j) const;  // x_j, 0-based j

  std::string q_name(int mu) const;
  std::string eta_name(int mu) const;

  friend bool operator==(const VariableContext& a, const VariableContext& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.degrees_ == b.degrees_;
  }

 private:
  int n_;
  int k_;
  std::vector<int> degrees_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

ContextPtr make_context(int n, int k, std::vector<int> degrees);

inline bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || *a == *b; }

}  // namespace dwork
