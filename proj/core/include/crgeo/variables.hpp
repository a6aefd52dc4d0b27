#ifndef CRGEO_VARIABLES_HPP
#define CRGEO_VARIABLES_HPP

#include <stdexcept>
#include <string>

namespace crgeo {

/// Variable universe for all symbolic work. A polynomial ring instance is
/// parametrized by nz, the number of z coordinates (ambient dimension minus
/// one). Slot layout: [w, conj(w), u, z_1..z_nz, conj(z_1)..conj(z_nz)].
/// u is the real chart coordinate i(w - conj(w)) on a graph chart.
struct VarId {
  enum Kind { W, Wb, U, Z, Zb };
  Kind kind = U;
  int index = 0; // for Z/Zb, zero-based

  static VarId w() { return {W, 0}; }
  static VarId wb() { return {Wb, 0}; }
  static VarId u() { return {U, 0}; }
  static VarId z(int j) { return {Z, j}; }
  static VarId zb(int j) { return {Zb, j}; }

  /// Conjugation swaps w <-> conj(w), z_j <-> conj(z_j), fixes u.
  VarId conj() const {
    switch (kind) {
      case W: return wb();
      case Wb: return w();
      case U: return u();
      case Z: return zb(index);
      case Zb: return z(index);
    }
    return u();
  }

  int slot(int nz) const {
    switch (kind) {
      case W: return 0;
      case Wb: return 1;
      case U: return 2;
      case Z:
        if (index >= nz) throw std::out_of_range("VarId: z index out of range");
        return 3 + index;
      case Zb:
        if (index >= nz) throw std::out_of_range("VarId: zb index out of range");
        return 3 + nz + index;
    }
    return 2;
  }

  static VarId from_slot(int slot, int nz) {
    if (slot == 0) return w();
    if (slot == 1) return wb();
    if (slot == 2) return u();
    if (slot < 3 + nz) return z(slot - 3);
    return zb(slot - 3 - nz);
  }

  static int slot_count(int nz) { return 3 + 2 * nz; }

  /// 1-based display name matching the input grammar: z1, conj(z2), w, u.
  std::string name() const {
    switch (kind) {
      case W: return "w";
      case Wb: return "conj(w)";
      case U: return "u";
      case Z: return "z" + std::to_string(index + 1);
      case Zb: return "conj(z" + std::to_string(index + 1) + ")";
    }
    return "u";
  }

  bool operator==(const VarId&) const = default;
};

} // namespace crgeo

#endif
