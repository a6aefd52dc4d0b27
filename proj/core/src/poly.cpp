#include "crgeo/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace crgeo {

int mono_degree(const Mono& m) {
  int d = 0;
  for (uint16_t e : m) d += e;
  return d;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Poly Poly::constant(int nz, const GaussianRational& c) {
  Poly p(nz);
  if (!c.is_zero()) p.terms_[Mono(VarId::slot_count(nz), 0)] = c;
  return p;
}

Poly Poly::var(int nz, VarId v) {
  Mono m(VarId::slot_count(nz), 0);
  m[v.slot(nz)] = 1;
  return monomial(nz, m, GaussianRational(1));
}

Poly Poly::monomial(int nz, const Mono& m, const GaussianRational& c) {
  if (static_cast<int>(m.size()) != VarId::slot_count(nz))
    throw std::invalid_argument("Poly::monomial: exponent vector size mismatch");
  Poly p(nz);
  if (!c.is_zero()) p.terms_[m] = c;
  return p;
}

Poly Poly::with_nz(int nz) const {
  if (nz == nz_) return *this;
  if (nz < nz_) throw std::invalid_argument("Poly::with_nz: cannot shrink variable set");
  Poly r(nz);
  for (const auto& [m, c] : terms_) {
    Mono mm(VarId::slot_count(nz), 0);
    mm[0] = m[0];
    mm[1] = m[1];
    mm[2] = m[2];
    for (int j = 0; j < nz_; ++j) {
      mm[3 + j] = m[3 + j];
      mm[3 + nz + j] = m[3 + nz_ + j];
    }
    r.terms_[mm] = c;
  }
  return r;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return mono_degree(terms_.rbegin()->first); // graded order: last term has max degree
}

int Poly::degree_in(VarId v) const {
  int s = v.slot(nz_), d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[s]));
  return d;
}

GaussianRational Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational Poly::constant_term() const { return coeff(Mono(VarId::slot_count(nz_), 0)); }

void Poly::set_coeff(const Mono& m, const GaussianRational& c) {
  if (c.is_zero()) terms_.erase(m);
  else terms_[m] = c;
}

Poly Poly::operator-() const {
  Poly r(nz_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nz_ != nz_) { *this = this->with_nz(std::max(nz_, o.nz_)) + o.with_nz(std::max(nz_, o.nz_)); return *this; }
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r += -o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (o.nz_ != nz_) return this->with_nz(std::max(nz_, o.nz_)) * o.with_nz(std::max(nz_, o.nz_));
  Poly r(nz_);
  const int slots = VarId::slot_count(nz_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(slots);
      for (int k = 0; k < slots; ++k) m[k] = static_cast<uint16_t>(ma[k] + mb[k]);
      GaussianRational c = ca * cb;
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) r.terms_[m] = c;
      else {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  return r;
}

Poly Poly::operator*(const GaussianRational& s) const {
  if (s.is_zero()) return Poly(nz_);
  Poly r(nz_);
  for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (nz_ == o.nz_) return terms_ == o.terms_;
  int nn = std::max(nz_, o.nz_);
  return with_nz(nn).terms_ == o.with_nz(nn).terms_;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly r = constant(nz_, GaussianRational(1));
  Poly b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

Poly Poly::conj() const {
  const int slots = VarId::slot_count(nz_);
  Poly r(nz_);
  for (const auto& [m, c] : terms_) {
    Mono mm(slots);
    mm[0] = m[1];
    mm[1] = m[0];
    mm[2] = m[2];
    for (int j = 0; j < nz_; ++j) {
      mm[3 + j] = m[3 + nz_ + j];
      mm[3 + nz_ + j] = m[3 + j];
    }
    r.terms_[mm] = c.conj();
  }
  return r;
}

Poly Poly::wirtinger(VarId v) const {
  const int s = v.slot(nz_);
  Poly r(nz_);
  for (const auto& [m, c] : terms_) {
    if (m[s] == 0) continue;
    Mono mm = m;
    mm[s] -= 1;
    r.terms_[mm] = c * GaussianRational(static_cast<long>(m[s]));
  }
  return r;
}

Poly Poly::truncate(int order) const {
  Poly r(nz_);
  for (const auto& [m, c] : terms_)
    if (mono_degree(m) <= order) r.terms_[m] = c;
  return r;
}

Poly Poly::part_of_degree(int d) const { return degree_range(d, d); }

Poly Poly::degree_range(int lo, int hi) const {
  Poly r(nz_);
  for (const auto& [m, c] : terms_) {
    int d = mono_degree(m);
    if (d >= lo && d <= hi) r.terms_[m] = c;
  }
  return r;
}

GaussianRational Poly::eval(const std::vector<GaussianRational>& vals) const {
  if (static_cast<int>(vals.size()) != VarId::slot_count(nz_))
    throw std::invalid_argument("Poly::eval: value vector size mismatch");
  GaussianRational acc;
  for (const auto& [m, c] : terms_) {
    GaussianRational t = c;
    for (size_t s = 0; s < m.size(); ++s)
      for (int k = 0; k < m[s]; ++k) t *= vals[s];
    acc += t;
  }
  return acc;
}

Poly Poly::substitute(const std::vector<std::optional<Poly>>& images, int trunc_order,
                      bool check_conjugation) const {
  const int slots = VarId::slot_count(nz_);
  if (static_cast<int>(images.size()) != slots)
    throw std::invalid_argument("Poly::substitute: image vector size mismatch");

  if (check_conjugation) {
    auto img = [&](int s) -> Poly {
      return images[s] ? *images[s] : Poly::var(nz_, VarId::from_slot(s, nz_));
    };
    for (int s = 0; s < slots; ++s) {
      int cs = VarId::from_slot(s, nz_).conj().slot(nz_);
      if (img(s).conj() != img(cs))
        throw std::invalid_argument("Poly::substitute: map does not respect conjugation");
    }
  }

  // result nz: images may live in a larger ring
  int rnz = nz_;
  for (const auto& im : images)
    if (im) rnz = std::max(rnz, im->nz());

  auto trunc = [&](Poly p) { return trunc_order >= 0 ? p.truncate(trunc_order) : p; };

  // power cache per substituted slot
  std::vector<std::vector<Poly>> powers(slots);
  auto power_of = [&](int s, int e) -> const Poly& {
    auto& cache = powers[s];
    if (cache.empty()) cache.push_back(Poly::constant(rnz, GaussianRational(1)));
    while (static_cast<int>(cache.size()) <= e) {
      Poly next = trunc(cache.back() * images[s]->with_nz(rnz));
      cache.push_back(std::move(next));
    }
    return cache[e];
  };

  Poly result(rnz);
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(rnz, c);
    Mono passthrough(VarId::slot_count(rnz), 0);
    for (int s = 0; s < slots; ++s) {
      if (m[s] == 0) continue;
      if (images[s]) {
        term = trunc(term * power_of(s, m[s]));
      } else {
        VarId v = VarId::from_slot(s, nz_);
        passthrough[v.slot(rnz)] += m[s];
      }
    }
    if (mono_degree(passthrough) > 0)
      term = term * Poly::monomial(rnz, passthrough, GaussianRational(1));
    result += trunc(term);
  }
  return trunc(result);
}

std::pair<int, int> Poly::z_bidegree(const Mono& m, int nz) {
  int j = 0, k = 0;
  for (int t = 0; t < nz; ++t) {
    j += m[3 + t];
    k += m[3 + nz + t];
  }
  return {j, k};
}

std::map<std::pair<int, int>, Poly> Poly::bidegree_split() const {
  std::map<std::pair<int, int>, Poly> out;
  for (const auto& [m, c] : terms_) {
    auto key = z_bidegree(m, nz_);
    auto it = out.find(key);
    if (it == out.end()) it = out.emplace(key, Poly(nz_)).first;
    it->second.terms_[m] = c;
  }
  return out;
}

Poly Poly::harmonic_part() const {
  Poly r(nz_);
  for (const auto& [m, c] : terms_) {
    auto [j, k] = z_bidegree(m, nz_);
    if (j == 0 || k == 0) r.terms_[m] = c;
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    // split the sign out for readable joins when the coefficient is real
    GaussianRational coeff = c;
    bool negative = false;
    if (coeff.is_real() && coeff.re() < 0) {
      negative = true;
      coeff = -coeff;
    }
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    std::string cs = coeff.str();
    bool coeff_needs_parens = !coeff.is_real() && !(coeff.re() == 0 && coeff.im() == 1);
    bool is_const_term = mono_degree(m) == 0;
    std::vector<std::string> factors;
    if (is_const_term || !coeff.is_one()) {
      if (coeff_needs_parens) factors.push_back("(" + cs + ")");
      else factors.push_back(cs);
    }
    for (size_t s = 0; s < m.size(); ++s) {
      if (m[s] == 0) continue;
      std::string f = VarId::from_slot(static_cast<int>(s), nz_).name();
      if (m[s] > 1) f += "^" + std::to_string(m[s]);
      factors.push_back(f);
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

} // namespace crgeo
