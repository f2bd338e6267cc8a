#include "soscert/monomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "soscert/indeterminates.hpp"

namespace soscert {

IndeterminateSpace::IndeterminateSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  for (VarId v = 0; v < labels_.size(); ++v) {
    auto [it, fresh] = by_label_.emplace(labels_[v], v);
    if (!fresh) throw std::invalid_argument("duplicate indeterminate label: " + labels_[v]);
  }
}

std::shared_ptr<const IndeterminateSpace> IndeterminateSpace::make(
    std::vector<std::string> labels) {
  return std::shared_ptr<const IndeterminateSpace>(new IndeterminateSpace(std::move(labels)));
}

std::optional<VarId> IndeterminateSpace::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Monomial Monomial::variable(VarId v, uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.factors_.push_back({v, e});
    m.degree_ = e;
  }
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v)
      m.factors_.back().second += e;
    else
      m.factors_.push_back({v, e});
    m.degree_ += e;
  }
  return m;
}

uint32_t Monomial::exponent_of(VarId v) const {
  for (const auto& [var, e] : factors_)
    if (var == v) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + o.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() || j < o.factors_.size()) {
    if (j == o.factors_.size() ||
        (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
      m.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() || o.factors_[j].first < factors_[i].first) {
      m.factors_.push_back(o.factors_[j++]);
    } else {
      m.factors_.push_back({factors_[i].first, factors_[i].second + o.factors_[j].second});
      ++i;
      ++j;
    }
  }
  m.degree_ = degree_ + o.degree_;
  return m;
}

Monomial Monomial::pow(uint32_t e) const {
  Monomial m;
  if (e == 0) return m;
  m.factors_ = factors_;
  for (auto& f : m.factors_) f.second *= e;
  m.degree_ = degree_ * e;
  return m;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() && j < b.factors_.size()) {
    const auto& fa = a.factors_[i];
    const auto& fb = b.factors_[j];
    if (fa.first != fb.first) {
      // The one holding the earlier variable has a positive exponent there.
      return fa.first < fb.first ? 1 : -1;
    }
    if (fa.second != fb.second) return fa.second > fb.second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.factors_.size()) return 1;
  if (j < b.factors_.size()) return -1;
  return 0;
}

}  // namespace soscert
