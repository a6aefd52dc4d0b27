#include "crgeo/weights.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace crgeo {

WeightVector::WeightVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (!is_ordered_tuple()) throw std::invalid_argument("WeightVector: not an ordered tuple");
}

WeightVector WeightVector::finite(const std::vector<long>& v) {
  std::vector<Entry> e;
  e.reserve(v.size());
  for (long x : v) e.emplace_back(mpq_class(x));
  return WeightVector(std::move(e));
}

bool WeightVector::is_ordered_tuple() const {
  mpq_class prev = 1;
  bool seen_inf = false;
  for (const auto& e : entries_) {
    if (!e) { seen_inf = true; continue; }
    if (seen_inf) return false; // finite after infinity breaks monotonicity
    if (*e < prev) return false;
    prev = *e;
  }
  return entries_.empty() || true;
}

bool WeightVector::is_admissible() const {
  for (int k = 0; k < size(); ++k) {
    if (!entries_[k]) continue;
    // search tuples (a_1..a_k), a_k > 0, sum a_j/lambda_j == 1;
    // bounded: a_j <= lambda_j's ceiling since each term is >= a_j/lambda_k... use a_j <= num bound
    // Depth-first with exact rationals; weights are small in practice.
    std::vector<int> a(k + 1, 0);
    std::function<bool(int, mpq_class)> rec = [&](int j, mpq_class acc) -> bool {
      if (acc > 1) return false;
      if (j == k) {
        // choose a_k >= 1 with acc + a_k/lambda_k == 1
        mpq_class rem = 1 - acc;
        if (rem <= 0) return false;
        mpq_class cnt = rem * *entries_[k];
        return cnt.get_den() == 1 && cnt >= 1;
      }
      if (!entries_[j]) return rec(j + 1, acc); // infinite weight: a_j must be 0
      mpq_class lam = *entries_[j];
      mpq_class maxa = (1 - acc) * lam;
      mpz_class floor_val = maxa.get_num() / maxa.get_den();
      long bound = floor_val.get_si();
      for (long aj = 0; aj <= bound; ++aj)
        if (rec(j + 1, acc + mpq_class(aj) / lam)) return true;
      return false;
    };
    if (!rec(0, mpq_class(0))) return false;
  }
  return true;
}

mpq_class WeightVector::weight_of_multiindex(const std::vector<int>& alpha) const {
  if (static_cast<int>(alpha.size()) != size())
    throw std::invalid_argument("WeightVector: multiindex length mismatch");
  mpq_class w = 0;
  for (int k = 0; k < size(); ++k) {
    if (!entries_[k]) continue; // infinity contributes 0
    w += mpq_class(alpha[k]) / *entries_[k];
  }
  return w;
}

mpq_class WeightVector::weight_of_monomial(const Mono& m, int nz) const {
  if (size() != nz + 1)
    throw std::invalid_argument("WeightVector: size must be ambient dimension");
  std::vector<int> alpha(nz + 1, 0);
  alpha[0] = m[0] + m[1] + m[2]; // w, conj(w), u
  for (int j = 0; j < nz; ++j) alpha[j + 1] = m[3 + j] + m[3 + nz + j];
  return weight_of_multiindex(alpha);
}

std::string WeightVector::str() const {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < size(); ++k) {
    if (k) os << ",";
    os << (entries_[k] ? entries_[k]->get_str() : std::string("inf"));
  }
  os << ")";
  return os.str();
}

bool is_O_Lambda(const Poly& rho, const WeightVector& lambda) {
  for (const auto& [m, c] : rho.terms())
    if (lambda.weight_of_monomial(m, rho.nz()) < 1) return false;
  return true;
}

Poly weight_le_part(const Poly& p, const WeightVector& lambda) {
  Poly r(p.nz());
  for (const auto& [m, c] : p.terms())
    if (lambda.weight_of_monomial(m, p.nz()) <= 1) r.set_coeff(m, c);
  return r;
}

} // namespace crgeo
