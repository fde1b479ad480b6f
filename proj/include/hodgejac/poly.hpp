#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/errors.hpp"

namespace hodgejac {

// Exponent vector; Laurent (negative) exponents are allowed in the torus model.
using ExpVec = std::vector<int32_t>;

inline int64_t total_degree(const ExpVec& e) {
  int64_t s = 0;
  for (auto x : e) s += x;
  return s;
}

// Graded lexicographic order: first by total degree, then lexicographically.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    int64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// All exponent vectors of total degree `deg` in `nvars` variables,
// graded-lex descending.
inline std::vector<ExpVec> degree_monomials(int nvars, int64_t deg) {
  std::vector<ExpVec> out;
  if (deg < 0) return out;
  if (nvars == 0) {
    if (deg == 0) out.push_back({});
    return out;
  }
  ExpVec cur(nvars, 0);
  auto rec = [&](auto&& self, int pos, int64_t left) -> void {
    if (pos == nvars - 1) {
      cur[pos] = static_cast<int32_t>(left);
      out.push_back(cur);
      return;
    }
    for (int64_t e = left; e >= 0; --e) {
      cur[pos] = static_cast<int32_t>(e);
      self(self, pos + 1, left - e);
    }
  };
  rec(rec, 0, deg);
  return out;
}

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in canonical graded-lex order; zero coefficients are never
// stored.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, mpq_class, GrlexLess>;

  explicit MultiPoly(int arity = 0) : arity_(arity) {}

  static MultiPoly monomial(const ExpVec& e, const mpq_class& c = 1) {
    MultiPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  int arity() const { return arity_; }
  bool empty() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const ExpVec& e, const mpq_class& c) {
    if (static_cast<int>(e.size()) != arity_)
      throw precondition_error("term arity " + std::to_string(e.size()) +
                               " does not match polynomial arity " + std::to_string(arity_));
    if (c == 0) return;
    mpq_class cc = c;
    cc.canonicalize();
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(cc));
    } else {
      it->second += cc;
      if (it->second == 0) terms_.erase(it);
    }
  }

  mpq_class coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_same_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_same_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  MultiPoly scaled(const mpq_class& s) const {
    MultiPoly out(arity_);
    if (s == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
  }

  MultiPoly shifted(const ExpVec& mono) const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) {
      ExpVec f = e;
      for (int i = 0; i < arity_; ++i) f[i] += mono[i];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    check_same_arity(o);
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_)
      for (const auto& [f, d] : o.terms_) {
        ExpVec g = e;
        for (int i = 0; i < arity_; ++i) g[i] += f[i];
        out.add_term(g, c * d);
      }
    return out;
  }

  // d/dx_i
  MultiPoly partial(int i) const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      ExpVec f = e;
      f[i] -= 1;
      out.add_term(f, c * e[i]);
    }
    return out;
  }

  // x_i d/dx_i (defined for Laurent exponents as well)
  MultiPoly theta(int i) const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) out.add_term(e, c * e[i]);
    return out;
  }

  bool is_homogeneous(int64_t* degree_out = nullptr) const {
    if (terms_.empty()) {
      if (degree_out) *degree_out = 0;
      return true;
    }
    int64_t d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
  }

  bool operator==(const MultiPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

  // One term per line, "coefficient SPACE comma-separated-exponents", highest
  // term first.  Round-trips byte-identically through parse().
  std::string str() const {
    std::ostringstream os;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      os << it->second.get_str() << ' ';
      const ExpVec& e = it->first;
      for (int i = 0; i < arity_; ++i) {
        if (i) os << ',';
        os << e[i];
      }
      os << '\n';
    }
    return os.str();
  }

  static MultiPoly parse(const std::string& text, int arity) {
    MultiPoly out(arity);
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      std::string body = line.substr(a, b - a + 1);
      auto sp = body.find(' ');
      if (sp == std::string::npos)
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected 'coefficient exponents'");
      std::string coeff_s = body.substr(0, sp);
      std::string exps_s = body.substr(sp + 1);
      mpq_class c = parse_rational(coeff_s, lineno);
      ExpVec e = parse_exponents(exps_s, lineno);
      if (static_cast<int>(e.size()) != arity)
        throw parse_error("line " + std::to_string(lineno) + ": expected " +
                          std::to_string(arity) + " exponents, got " + std::to_string(e.size()));
      out.add_term(e, c);
    }
    return out;
  }

  static mpq_class parse_rational(const std::string& s, int lineno) {
    auto digits_ok = [](const std::string& x) {
      if (x.empty()) return false;
      size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
      if (i == x.size()) return false;
      for (; i < x.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(x[i]))) return false;
      return true;
    };
    auto slash = s.find('/');
    bool ok = slash == std::string::npos
                  ? digits_ok(s)
                  : digits_ok(s.substr(0, slash)) && digits_ok(s.substr(slash + 1));
    if (!ok)
      throw parse_error("line " + std::to_string(lineno) + ": bad rational coefficient '" + s +
                        "'");
    mpq_class q(s);
    if (q.get_den() == 0)
      throw parse_error("line " + std::to_string(lineno) + ": zero denominator");
    q.canonicalize();
    return q;
  }

  static ExpVec parse_exponents(const std::string& s, int lineno) {
    ExpVec e;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
      size_t a = cur.find_first_not_of(" \t");
      size_t b = cur.find_last_not_of(" \t");
      if (a == std::string::npos)
        throw parse_error("line " + std::to_string(lineno) + ": empty exponent");
      cur = cur.substr(a, b - a + 1);
      try {
        size_t pos = 0;
        long v = std::stol(cur, &pos);
        if (pos != cur.size()) throw std::invalid_argument(cur);
        e.push_back(static_cast<int32_t>(v));
      } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(lineno) + ": bad exponent '" + cur + "'");
      }
    }
    return e;
  }

 private:
  void check_same_arity(const MultiPoly& o) const {
    if (arity_ != o.arity_)
      throw precondition_error("polynomial arity mismatch: " + std::to_string(arity_) + " vs " +
                               std::to_string(o.arity_));
  }

  int arity_;
  TermMap terms_;
};

}  // namespace hodgejac
