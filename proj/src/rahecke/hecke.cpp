#include "rahecke/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rahecke::hecke {

MultiParameter::MultiParameter(GraphPtr graph, std::vector<double> values)
    : graph_(std::move(graph)), values_(std::move(values)) {
  if (!graph_) throw ValidationError("parameter needs a graph");
  if (values_.size() != graph_->rank())
    throw ValidationError("parameter has " + std::to_string(values_.size()) + " values for " +
                          std::to_string(graph_->rank()) + " generators");
  for (std::size_t s = 0; s < values_.size(); ++s)
    if (!(values_[s] > 0.0) || !std::isfinite(values_[s]))
      throw ValidationError("q_" + graph_->name(static_cast<Generator>(s)) +
                            " must be a positive finite number");
}

MultiParameter MultiParameter::uniform(GraphPtr graph, double q) {
  const std::size_t n = graph ? graph->rank() : 0;
  return MultiParameter(std::move(graph), std::vector<double>(n, q));
}

double MultiParameter::p(Generator s) const {
  const double q = values_.at(s);
  return (q - 1.0) / std::sqrt(q);
}

double MultiParameter::q_word(const Letters& w) const {
  double out = 1.0;
  for (Generator s : w) out *= values_.at(s);
  return out;
}

double MultiParameter::p_product(coxeter::VertexSet set) const {
  double out = 1.0;
  for (Generator s : set.members()) out *= p(s);
  return out;
}

bool MultiParameter::is_one() const {
  for (double v : values_)
    if (v != 1.0) return false;
  return true;
}

std::string MultiParameter::str() const {
  std::string out;
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (s) out += ",";
    out += graph_->name(static_cast<Generator>(s)) + "=" + format12(values_[s]);
  }
  return out;
}

HeckeElement HeckeElement::basis(const MultiParameter& q, const Letters& w, Complex c) {
  HeckeElement out(q);
  out.add(w, c);
  return out;
}

HeckeElement HeckeElement::basis(const MultiParameter& q, const NormalWord& w, Complex c) {
  coxeter::require_same_graph(q.graph(), w.graph());
  return basis(q, w.letters(), c);
}

Complex HeckeElement::coeff(const Letters& w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? Complex{} : it->second;
}

std::size_t HeckeElement::degree() const {
  // ShortLex order puts the longest word last.
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first.size();
}

void HeckeElement::add(const Letters& w, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = coeffs_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kPruneTolerance) coeffs_.erase(it);
}

void require_same_param(const HeckeElement& a, const HeckeElement& b) {
  if (!(a.param() == b.param())) throw ValidationError("elements use different parameters");
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  require_same_param(*this, o);
  for (const auto& [w, c] : o.coeffs_) add(w, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  require_same_param(*this, o);
  for (const auto& [w, c] : o.coeffs_) add(w, -c);
  return *this;
}

HeckeElement& HeckeElement::operator*=(Complex c) {
  Coeffs scaled;
  for (const auto& [w, v] : coeffs_) {
    const Complex r = v * c;
    if (std::abs(r) > kPruneTolerance) scaled.emplace(w, r);
  }
  coeffs_ = std::move(scaled);
  return *this;
}

std::string HeckeElement::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    if (c.imag() == 0.0)
      out << format12(c.real());
    else
      out << "(" << format12(c.real()) << (c.imag() < 0 ? "-" : "+") << format12(std::abs(c.imag()))
          << "i)";
    out << "*" << graph().display(w);
  }
  return out.str();
}

namespace {

// T_s applied to one term c T_v, accumulated into out.
void apply_generator(const MultiParameter& q, Generator s, const Letters& v, Complex c,
                     HeckeElement::Coeffs& out) {
  const auto& g = q.graph();
  const bool descent = coxeter::is_left_descent(g, v, s);
  auto add = [&out](const Letters& w, Complex value) {
    auto [it, inserted] = out.try_emplace(w, value);
    if (!inserted) it->second += value;
  };
  add(coxeter::left_multiply(g, s, v), c);
  if (descent) {
    const double p = q.p(s);
    if (p != 0.0) add(v, c * p);
  }
}

}  // namespace

HeckeElement left_mul_generator(Generator s, const HeckeElement& x) {
  if (s >= x.graph().rank()) throw ValidationError("unknown generator index");
  HeckeElement::Coeffs acc;
  for (const auto& [v, c] : x.coeffs()) apply_generator(x.param(), s, v, c, acc);
  HeckeElement out(x.param());
  for (const auto& [w, c] : acc) out.add(w, c);
  return out;
}

std::vector<std::pair<Letters, Complex>> basis_product(const MultiParameter& q, const Letters& w,
                                                       const Letters& u) {
  HeckeElement::Coeffs current{{u, Complex{1.0}}};
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    HeckeElement::Coeffs next;
    for (const auto& [v, c] : current) apply_generator(q, *it, v, c, next);
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

HeckeElement multiply(const HeckeElement& x, const HeckeElement& y) {
  require_same_param(x, y);
  HeckeElement::Coeffs acc;
  for (const auto& [w, a] : x.coeffs())
    for (const auto& [u, b] : y.coeffs())
      for (const auto& [v, c] : basis_product(x.param(), w, u)) {
        auto [it, inserted] = acc.try_emplace(v, a * b * c);
        if (!inserted) it->second += a * b * c;
      }
  HeckeElement out(x.param());
  for (const auto& [w, c] : acc) out.add(w, c);
  return out;
}

HeckeElement star(const HeckeElement& x) {
  HeckeElement out(x.param());
  for (const auto& [w, c] : x.coeffs())
    out.add(coxeter::canonical_order(x.graph(), coxeter::inverse_letters(w)), std::conj(c));
  return out;
}

Complex trace(const HeckeElement& x) { return x.coeff(Letters{}); }

double l2_norm(const HeckeElement& x) {
  double sum = 0.0;
  for (const auto& [w, c] : x.coeffs()) sum += std::norm(c);
  return std::sqrt(sum);
}

HeckeElement chi(std::size_t n, const HeckeElement& x) {
  HeckeElement out(x.param());
  for (const auto& [w, c] : x.coeffs())
    if (w.size() == n) out.add(w, c);
  return out;
}

HeckeElement chi_le(std::size_t n, const HeckeElement& x) {
  HeckeElement out(x.param());
  for (const auto& [w, c] : x.coeffs())
    if (w.size() <= n) out.add(w, c);
  return out;
}

HeckeElement reparametrize(const HeckeElement& x, const MultiParameter& q) {
  coxeter::require_same_graph(x.graph(), q.graph());
  HeckeElement out(q);
  for (const auto& [w, c] : x.coeffs()) out.add(w, c);
  return out;
}

HeckeElement mean_zero_part(const HeckeElement& x) {
  HeckeElement out = x;
  out.add(Letters{}, -trace(x));
  return out;
}

double max_coeff_difference(const HeckeElement& x, const HeckeElement& y) {
  coxeter::require_same_graph(x.graph(), y.graph());
  double out = 0.0;
  for (const auto& [w, c] : x.coeffs()) out = std::max(out, std::abs(c - y.coeff(w)));
  for (const auto& [w, c] : y.coeffs())
    if (x.coeffs().find(w) == x.coeffs().end()) out = std::max(out, std::abs(c));
  return out;
}

}  // namespace rahecke::hecke
