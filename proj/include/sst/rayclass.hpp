#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "sst/cyclotomic.hpp"
#include "sst/qfield.hpp"

namespace sst {

/// Modulus m * (subset of {oo_1, oo_2}) with integral finite part.
struct Modulus {
  QuadIdeal finite;
  bool inf1 = true;
  bool inf2 = true;

  std::vector<int> places() const {
    std::vector<int> out;
    if (inf1) out.push_back(1);
    if (inf2) out.push_back(2);
    return out;
  }

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.finite == b.finite && a.inf1 == b.inf1 && a.inf2 == b.inf2;
  }
};

Modulus make_modulus(const QuadField& field, const QuadElem& gen, bool inf1, bool inf2);
Modulus make_modulus(const QuadField& field, long n, bool inf1, bool inf2);

struct RayClass {
  int index = 0;
  friend bool operator==(RayClass a, RayClass b) { return a.index == b.index; }
  friend bool operator<(RayClass a, RayClass b) { return a.index < b.index; }
};

class RayClassGroup;

/// Character of a ray class group, stored as exact cyclotomic exponents:
/// chi(c) = e^(2*pi*i*exponent[c]).
struct Character {
  std::vector<Rat> exponent;  // per class, in [0,1)
  long order = 1;
  bool totally_odd = false;
  Modulus conductor;

  const Rat& exponent_of(RayClass c) const { return exponent[c.index]; }
  CycSum value(RayClass c) const { return CycSum::root(exponent[c.index]); }
  BigComplex value_numeric(RayClass c, long prec) const {
    return root_of_unity(exponent[c.index], prec);
  }
  bool is_trivial() const {
    for (const Rat& e : exponent)
      if (e != 0) return false;
    return true;
  }
};

struct SearchBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ray class group C_f of a narrow-class-number-one real quadratic field,
/// realized as (units mod m) x (signs at the listed places) modulo the
/// image of the unit group.
class RayClassGroup {
 public:
  RayClassGroup(const QuadField& field, Modulus f);

  const QuadField& field() const { return field_; }
  const Modulus& modulus() const { return f_; }

  int size() const { return static_cast<int>(class_elem_.size()); }
  RayClass identity() const { return RayClass{0}; }
  RayClass mul(RayClass a, RayClass b) const;
  RayClass inverse(RayClass a) const;
  RayClass power(RayClass a, long e) const;
  long order_of(RayClass a) const;
  long exponent() const;

  /// Class of an integral element coprime to the modulus.
  RayClass class_of_element(const QuadElem& alpha) const;

  /// Class of a fractional ideal coprime to the modulus.
  RayClass class_of(const QuadIdeal& a) const;

  /// Integral representative generator, coprime to the modulus.
  const QuadElem& representative(RayClass c) const { return reps_[c.index]; }

  /// Representative additionally coprime to `extra`.
  QuadElem representative_coprime_to(RayClass c, const QuadIdeal& extra) const;

  /// nu with nu = 1 mod m, iota_i(nu) < 0 and the other embedding positive.
  QuadElem find_nu(int i) const;

  /// Class of (nu_i); identity when oo_i is not part of the modulus.
  RayClass conjugation_class(int i) const;

  /// All characters, with conductors and the totally-odd flag.
  const std::vector<Character>& characters() const;

  /// Classes of elements alpha = 1 mod sub_finite, positive at sub_places:
  /// the kernel of the projection onto the ray class group mod the
  /// sub-modulus. Used for conductor computation.
  std::vector<RayClass> kernel_of_sub_modulus(const QuadIdeal& sub_finite,
                                              const std::vector<int>& sub_places) const;

  /// Divisors of the finite part, via prime-element factorization.
  std::vector<QuadIdeal> finite_divisors() const;

 private:
  struct AElem {
    int unit_index;
    unsigned mask;
  };

  int a_index(int unit_index, unsigned mask) const;
  int a_mul(int x, int y) const;
  int a_of_element(const QuadElem& alpha) const;
  void build_characters() const;
  Modulus character_conductor(const Character& chi) const;

  QuadField field_;
  Modulus f_;
  std::vector<int> places_;

  // Residue machinery for O/m: canonical coordinates modulo the lattice of m.
  Int lat_g_, lat_tx_;
  std::pair<Int, Int> lat_u_;  // basis vector with second coordinate lat_g_
  std::pair<Int, Int> reduce_coords(const QuadElem& integral) const;
  QuadElem elem_of_coords(const std::pair<Int, Int>& ab) const;

  std::vector<std::pair<Int, Int>> unit_residues_;
  std::map<std::pair<Int, Int>, int> unit_index_;
  std::vector<std::vector<int>> unit_mul_;  // residue multiplication table

  std::vector<int> orbit_of_;    // A index -> class index
  std::vector<int> class_elem_;  // class index -> representative A index
  std::vector<QuadElem> reps_;

  mutable std::vector<Character> characters_;
  mutable bool characters_built_ = false;
};

}  // namespace sst
