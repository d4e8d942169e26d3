#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torsiongen/genus.hpp"
#include "torsiongen/group.hpp"

namespace torsiongen
{

/// Dense row-major integer matrix.
class IntMatrix
{
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : _rows(rows), _cols(cols), _data(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::vector<std::vector<long long>> const &rows);

  std::size_t rows() const noexcept { return _rows; }
  std::size_t cols() const noexcept { return _cols; }

  long long &operator()(std::size_t r, std::size_t c) { return _data[r * _cols + c]; }
  long long operator()(std::size_t r, std::size_t c) const { return _data[r * _cols + c]; }

  IntMatrix transpose() const;
  std::vector<std::vector<long long>> to_rows() const;

  bool operator==(IntMatrix const &) const = default;

private:
  std::size_t _rows = 0;
  std::size_t _cols = 0;
  std::vector<long long> _data;
};

IntMatrix operator*(IntMatrix const &x, IntMatrix const &y);
IntMatrix operator-(IntMatrix const &x);
IntMatrix matrix_power(IntMatrix const &m, unsigned e);
long long determinant(IntMatrix const &m);

/// Row-major text: one row per line, entries separated by single spaces.
std::string to_text(IntMatrix const &m);
IntMatrix matrix_from_text(std::string const &text);
std::string to_json(IntMatrix const &m);
IntMatrix matrix_from_json(std::string const &text);

/**
 * Standard symplectic form on Z^{2g} in interleaved coordinates
 * (a1, b1, a2, b2, ...): <a_i, b_i> = 1, <b_i, a_i> = -1, all else 0.
 */
IntMatrix standard_form(unsigned g);

long long pairing(std::vector<long long> const &x, std::vector<long long> const &y);

/// 2g x 2g integer matrix M with M^T J M = J.
class SymplecticMatrix
{
public:
  /// Throws InvalidParams unless `entries` preserves the standard form.
  explicit SymplecticMatrix(IntMatrix entries);
  static SymplecticMatrix identity(unsigned g);

  unsigned genus() const noexcept { return static_cast<unsigned>(_m.rows() / 2); }
  IntMatrix const &entries() const noexcept { return _m; }

  SymplecticMatrix operator*(SymplecticMatrix const &o) const;
  SymplecticMatrix inverse() const;

  /// Multiplicative order, or 0 if it exceeds `limit`.
  unsigned order(unsigned limit = 1000) const;

  bool operator==(SymplecticMatrix const &) const = default;

private:
  IntMatrix _m;
};

bool preserves_form(IntMatrix const &m);

/// Labels of the 2g basis classes in coordinate order.
struct HomologyBasis
{
  unsigned genus = 0;
  std::vector<std::string> labels;
};

HomologyBasis standard_basis(unsigned g);

/// Basis adapted to a rotation-symmetric surface: per genus-k piece the
/// handle classes a_i, b_i; per genus-(k-1) piece the tube meridians c_i
/// paired with dual classes e*_i; plus the axis handle when plus_one.
HomologyBasis rotation_basis(GenusDecomposition const &dec);

/// Homology action of the 2pi/k rotation, in standard coordinates.
SymplecticMatrix rotation_matrix(GenusDecomposition const &dec);

/// x -> x + <x, v> v.
SymplecticMatrix twist_transvection(HomologyBasis const &basis, std::vector<long long> const &v);

struct HumphriesClass
{
  std::string label;
  std::vector<long long> vector;
};

/// alpha_1, alpha_2, then the chain beta_1, gamma_1, ..., gamma_{g-1}, beta_g.
std::vector<HumphriesClass> humphries_classes(unsigned g);

/// Declared intersection pattern: 1 where the curves meet once, else 0.
std::vector<std::vector<int>> humphries_adjacency(unsigned g);

/// Transvections generating Sp(2g, Z): Humphries classes for g >= 2, the two
/// basis classes for g = 1.
std::vector<SymplecticMatrix> standard_transvections(unsigned g);

/// p^{g^2} prod_{i=1}^{g} (p^{2i} - 1).
GroupCard sp_order(unsigned g, unsigned p);

/// Counts every 2g x 2g matrix mod p preserving the form (small cases only).
std::uint64_t brute_force_sp_order(unsigned g, unsigned p);

struct ModPResult
{
  bool generates = false;
  std::uint64_t order = 0;
};

/// Breadth-first closure of the reduction mod p. g <= 3, p in {2, 3}.
ModPResult generates_mod_p(std::vector<SymplecticMatrix> const &mats, unsigned p);

} // namespace torsiongen
