#include "torsiongen/symplectic.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "torsiongen/error.hpp"

namespace torsiongen
{

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::vector<std::vector<long long>> const &rows)
{
  std::size_t const cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(Errc::ParseError, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix t(_cols, _rows);
  for (std::size_t r = 0; r < _rows; ++r) {
    for (std::size_t c = 0; c < _cols; ++c)
      t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<std::vector<long long>> IntMatrix::to_rows() const
{
  std::vector<std::vector<long long>> rows(_rows, std::vector<long long>(_cols));
  for (std::size_t r = 0; r < _rows; ++r) {
    for (std::size_t c = 0; c < _cols; ++c)
      rows[r][c] = (*this)(r, c);
  }
  return rows;
}

IntMatrix operator*(IntMatrix const &x, IntMatrix const &y)
{
  if (x.cols() != y.rows())
    throw Error(Errc::DegreeMismatch, "matrix shapes do not compose");

  IntMatrix z(x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t i = 0; i < x.cols(); ++i) {
      long long const xi = x(r, i);
      if (xi == 0)
        continue;
      for (std::size_t c = 0; c < y.cols(); ++c)
        z(r, c) += xi * y(i, c);
    }
  }
  return z;
}

IntMatrix operator-(IntMatrix const &x)
{
  IntMatrix y = x;
  for (std::size_t r = 0; r < y.rows(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c)
      y(r, c) = -y(r, c);
  }
  return y;
}

IntMatrix matrix_power(IntMatrix const &m, unsigned e)
{
  IntMatrix result = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  while (e) {
    if (e & 1u)
      result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

long long determinant(IntMatrix const &m)
{
  // Bareiss fraction-free elimination; exact for integer input.
  std::size_t const n = m.rows();
  if (n != m.cols())
    throw Error(Errc::InvalidParams, "determinant of a non-square matrix");
  if (n == 0)
    return 1;

  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      a[r][c] = m(r, c);
  }

  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0)
        ++swap;
      if (swap == n)
        return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * static_cast<long long>(a[n - 1][n - 1]);
}

std::string to_text(IntMatrix const &m)
{
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c)
        os << ' ';
      os << m(r, c);
    }
    os << '\n';
  }
  return os.str();
}

IntMatrix matrix_from_text(std::string const &text)
{
  std::vector<std::vector<long long>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<long long> row;
    long long v;
    while (ls >> v)
      row.push_back(v);
    if (!ls.eof())
      throw Error(Errc::ParseError, "non-integer entry in matrix text");
    if (!row.empty())
      rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

std::string to_json(IntMatrix const &m)
{
  return nlohmann::json(m.to_rows()).dump();
}

IntMatrix matrix_from_json(std::string const &text)
{
  try {
    auto const j = nlohmann::json::parse(text);
    return IntMatrix::from_rows(j.get<std::vector<std::vector<long long>>>());
  } catch (nlohmann::json::exception const &e) {
    throw Error(Errc::ParseError, e.what());
  }
}

IntMatrix standard_form(unsigned g)
{
  if (g < 1)
    throw Error(Errc::RangeError, "genus must be at least 1");
  IntMatrix j(2 * g, 2 * g);
  for (unsigned i = 0; i < g; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

long long pairing(std::vector<long long> const &x, std::vector<long long> const &y)
{
  if (x.size() != y.size() || x.size() % 2 != 0)
    throw Error(Errc::DegreeMismatch, "class vectors of different rank");
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); i += 2)
    s += x[i] * y[i + 1] - x[i + 1] * y[i];
  return s;
}

bool preserves_form(IntMatrix const &m)
{
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0)
    return false;
  auto const j = standard_form(static_cast<unsigned>(m.rows() / 2));
  return m.transpose() * j * m == j;
}

SymplecticMatrix::SymplecticMatrix(IntMatrix entries) : _m(std::move(entries))
{
  if (!preserves_form(_m))
    throw Error(Errc::InvalidParams, "matrix does not preserve the symplectic form");
}

SymplecticMatrix SymplecticMatrix::identity(unsigned g)
{
  return SymplecticMatrix(IntMatrix::identity(2 * g));
}

SymplecticMatrix SymplecticMatrix::operator*(SymplecticMatrix const &o) const
{
  return SymplecticMatrix(_m * o._m);
}

SymplecticMatrix SymplecticMatrix::inverse() const
{
  auto const j = standard_form(genus());
  return SymplecticMatrix(-(j * _m.transpose() * j));
}

unsigned SymplecticMatrix::order(unsigned limit) const
{
  IntMatrix const id = IntMatrix::identity(_m.rows());
  IntMatrix p = _m;
  for (unsigned e = 1; e <= limit; ++e) {
    if (p == id)
      return e;
    p = p * _m;
  }
  return 0;
}

HomologyBasis standard_basis(unsigned g)
{
  HomologyBasis b{g, {}};
  for (unsigned i = 1; i <= g; ++i) {
    b.labels.push_back("a" + std::to_string(i));
    b.labels.push_back("b" + std::to_string(i));
  }
  return b;
}

HomologyBasis rotation_basis(GenusDecomposition const &dec)
{
  validate(dec);
  HomologyBasis b{dec.genus(), {}};
  for (unsigned p = 0; p < dec.pieces(); ++p) {
    std::string const piece = "s" + std::to_string(p + 1) + ".";
    bool const handles = dec.piece_genus(p) == dec.k;
    for (unsigned i = 1; i <= dec.piece_genus(p); ++i) {
      b.labels.push_back(piece + (handles ? "a" : "c") + std::to_string(i));
      b.labels.push_back(piece + (handles ? "b" : "e*") + std::to_string(i));
    }
  }
  if (dec.plus_one) {
    b.labels.push_back("axis.a");
    b.labels.push_back("axis.b");
  }
  return b;
}

namespace
{

// Rotation on the two-spheres-with-k-tubes piece, genus m = k-1.
//
// Tube meridians c_1..c_k satisfy sum c_i = 0; loops e_i run out through
// tube i and back through tube i+1, so sum e_i = 0 and
// <c_j, e_i> = [j == i] - [j == i+1]. The rotation shifts both families.
// With M the pairing block, the dual classes e*_i = sum_j (M^-1)_{ji} e_j
// give a standard basis (c_i, e*_i).
IntMatrix tube_block(unsigned k)
{
  unsigned const m = k - 1;

  // Rotation in (c_1..c_m, e_1..e_m) coordinates; columns are images.
  IntMatrix rot(2 * m, 2 * m);
  for (unsigned fam = 0; fam < 2; ++fam) {
    unsigned const off = fam * m;
    for (unsigned i = 0; i < m; ++i) {
      if (i + 1 < m) {
        rot(off + i + 1, off + i) = 1;
      } else {
        for (unsigned j = 0; j < m; ++j)
          rot(off + j, off + i) = -1;
      }
    }
  }

  IntMatrix pair_block(m, m), dual(m, m);
  for (unsigned j = 0; j < m; ++j) {
    pair_block(j, j) = 1;
    if (j > 0)
      pair_block(j, j - 1) = -1;
    for (unsigned i = 0; i <= j; ++i)
      dual(j, i) = 1;
  }

  IntMatrix to_std = IntMatrix::identity(2 * m);   // P
  IntMatrix from_std = IntMatrix::identity(2 * m); // P^-1
  for (unsigned r = 0; r < m; ++r) {
    for (unsigned c = 0; c < m; ++c) {
      to_std(m + r, m + c) = dual(r, c);
      from_std(m + r, m + c) = pair_block(r, c);
    }
  }

  IntMatrix const blocked = from_std * rot * to_std;

  // (a_1..a_m, b_1..b_m) -> (a_1, b_1, a_2, b_2, ...)
  auto slot = [m](unsigned idx) { return idx < m ? 2 * idx : 2 * (idx - m) + 1; };
  IntMatrix out(2 * m, 2 * m);
  for (unsigned r = 0; r < 2 * m; ++r) {
    for (unsigned c = 0; c < 2 * m; ++c)
      out(slot(r), slot(c)) = blocked(r, c);
  }
  return out;
}

} // namespace

SymplecticMatrix rotation_matrix(GenusDecomposition const &dec)
{
  validate(dec);
  unsigned const g = dec.genus();
  unsigned const k = dec.k;

  IntMatrix r(2 * g, 2 * g);
  unsigned off = 0; // in handle pairs
  for (unsigned p = 0; p < dec.pieces(); ++p) {
    if (dec.piece_genus(p) == k) {
      for (unsigned i = 0; i < k; ++i) {
        unsigned const to = (i + 1) % k;
        r(2 * (off + to), 2 * (off + i)) = 1;
        r(2 * (off + to) + 1, 2 * (off + i) + 1) = 1;
      }
    } else {
      IntMatrix const block = tube_block(k);
      for (std::size_t a = 0; a < block.rows(); ++a) {
        for (std::size_t b = 0; b < block.cols(); ++b)
          r(2 * off + a, 2 * off + b) = block(a, b);
      }
    }
    off += dec.piece_genus(p);
  }

  if (dec.plus_one) {
    r(2 * off, 2 * off) = 1;
    r(2 * off + 1, 2 * off + 1) = 1;
  }

  return SymplecticMatrix(std::move(r));
}

SymplecticMatrix twist_transvection(HomologyBasis const &basis, std::vector<long long> const &v)
{
  std::size_t const dim = 2 * static_cast<std::size_t>(basis.genus);
  if (v.size() != dim)
    throw Error(Errc::InvalidParams, "class vector has rank " + std::to_string(v.size()) +
                                       ", expected " + std::to_string(dim));
  if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; }))
    throw Error(Errc::ZeroVector, "transvection along the zero class");

  // <x, v> = sum_c x_c w_c with w = J v.
  std::vector<long long> w(dim);
  for (std::size_t i = 0; i < dim; i += 2) {
    w[i] = v[i + 1];
    w[i + 1] = -v[i];
  }

  IntMatrix t = IntMatrix::identity(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c)
      t(r, c) += v[r] * w[c];
  }
  return SymplecticMatrix(std::move(t));
}

std::vector<HumphriesClass> humphries_classes(unsigned g)
{
  if (g < 2)
    throw Error(Errc::RangeError, "Humphries curves are listed for g >= 2");

  std::size_t const dim = 2 * g;
  auto a = [&](unsigned i) {
    std::vector<long long> v(dim, 0);
    v[2 * (i - 1)] = 1;
    return v;
  };
  auto b = [&](unsigned i) {
    std::vector<long long> v(dim, 0);
    v[2 * (i - 1) + 1] = 1;
    return v;
  };

  std::vector<HumphriesClass> res;
  res.push_back({"alpha:1", b(1)});
  res.push_back({"alpha:2", b(2)});
  for (unsigned i = 1; i <= g; ++i) {
    res.push_back({"beta:" + std::to_string(i), a(i)});
    if (i < g) {
      auto v = b(i);
      v[2 * i + 1] = -1;
      res.push_back({"gamma:" + std::to_string(i), std::move(v)});
    }
  }
  return res;
}

std::vector<std::vector<int>> humphries_adjacency(unsigned g)
{
  auto const classes = humphries_classes(g);
  std::size_t const m = classes.size();
  std::vector<std::vector<int>> adj(m, std::vector<int>(m, 0));
  auto link = [&](std::size_t x, std::size_t y) { adj[x][y] = adj[y][x] = 1; };

  // Indices: 0 alpha_1, 1 alpha_2, then the chain from index 2.
  link(0, 2);
  link(1, 4);
  for (std::size_t i = 2; i + 1 < m; ++i)
    link(i, i + 1);
  return adj;
}

std::vector<SymplecticMatrix> standard_transvections(unsigned g)
{
  auto const basis = standard_basis(g);
  std::vector<SymplecticMatrix> res;
  if (g == 1) {
    res.push_back(twist_transvection(basis, {1, 0}));
    res.push_back(twist_transvection(basis, {0, 1}));
    return res;
  }
  for (auto const &c : humphries_classes(g))
    res.push_back(twist_transvection(basis, c.vector));
  return res;
}

GroupCard sp_order(unsigned g, unsigned p)
{
  GroupCard r = 1;
  for (unsigned i = 0; i < g * g; ++i)
    r *= p;
  for (unsigned i = 1; i <= g; ++i) {
    GroupCard q = 1;
    for (unsigned e = 0; e < 2 * i; ++e)
      q *= p;
    r *= q - 1;
  }
  return r;
}

namespace
{

constexpr std::uint64_t closure_budget = 2000000;
constexpr std::uint64_t brute_force_budget = 1u << 24;

struct ModMatrix
{
  unsigned dim = 0;
  unsigned p = 2;
  std::array<std::uint8_t, 36> e{};

  std::uint64_t code() const
  {
    std::uint64_t c = 0;
    for (unsigned i = 0; i < dim * dim; ++i)
      c = c * p + e[i];
    return c;
  }
};

ModMatrix reduce(IntMatrix const &m, unsigned p)
{
  ModMatrix r;
  r.dim = static_cast<unsigned>(m.rows());
  r.p = p;
  for (unsigned i = 0; i < r.dim; ++i) {
    for (unsigned j = 0; j < r.dim; ++j) {
      long long v = m(i, j) % static_cast<long long>(p);
      if (v < 0)
        v += p;
      r.e[i * r.dim + j] = static_cast<std::uint8_t>(v);
    }
  }
  return r;
}

ModMatrix multiply(ModMatrix const &x, ModMatrix const &y)
{
  ModMatrix z;
  z.dim = x.dim;
  z.p = x.p;
  for (unsigned i = 0; i < x.dim; ++i) {
    for (unsigned j = 0; j < x.dim; ++j) {
      unsigned s = 0;
      for (unsigned t = 0; t < x.dim; ++t)
        s += x.e[i * x.dim + t] * y.e[t * x.dim + j];
      z.e[i * x.dim + j] = static_cast<std::uint8_t>(s % x.p);
    }
  }
  return z;
}

} // namespace

std::uint64_t brute_force_sp_order(unsigned g, unsigned p)
{
  unsigned const dim = 2 * g;
  unsigned const cells = dim * dim;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < cells; ++i) {
    total *= p;
    if (total > brute_force_budget)
      throw Error(Errc::TooLarge, "brute-force enumeration of Sp(" + std::to_string(dim) +
                                    ", " + std::to_string(p) + ") is out of budget");
  }

  auto const j = reduce(standard_form(g), p);
  std::uint64_t count = 0;
  ModMatrix m;
  m.dim = dim;
  m.p = p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = cells; i-- > 0;) {
      m.e[i] = static_cast<std::uint8_t>(c % p);
      c /= p;
    }
    ModMatrix mt = m;
    for (unsigned r = 0; r < dim; ++r) {
      for (unsigned s = 0; s < dim; ++s)
        mt.e[r * dim + s] = m.e[s * dim + r];
    }
    auto const lhs = multiply(multiply(mt, j), m);
    if (std::equal(lhs.e.begin(), lhs.e.begin() + cells, j.e.begin()))
      ++count;
  }
  return count;
}

ModPResult generates_mod_p(std::vector<SymplecticMatrix> const &mats, unsigned p)
{
  if (mats.empty())
    throw Error(Errc::InvalidParams, "no matrices given");
  unsigned const g = mats.front().genus();
  for (auto const &m : mats) {
    if (m.genus() != g)
      throw Error(Errc::DegreeMismatch, "matrices of different genus");
  }
  if (g > 3 || (p != 2 && p != 3))
    throw Error(Errc::TooLarge, "mod-p closure supports g <= 3 and p in {2, 3}");

  GroupCard const target = sp_order(g, p);
  if (target > closure_budget)
    throw Error(Errc::TooLarge, "|Sp(" + std::to_string(2 * g) + ", " + std::to_string(p) +
                                  ")| exceeds the enumeration budget");

  std::vector<ModMatrix> gens;
  for (auto const &m : mats)
    gens.push_back(reduce(m.entries(), p));

  ModMatrix const id = reduce(IntMatrix::identity(2 * g), p);
  std::unordered_set<std::uint64_t> seen{id.code()};
  std::vector<ModMatrix> frontier{id};
  while (!frontier.empty()) {
    std::vector<ModMatrix> next;
    for (auto const &x : frontier) {
      for (auto const &s : gens) {
        auto y = multiply(s, x);
        if (seen.insert(y.code()).second)
          next.push_back(y);
      }
    }
    frontier = std::move(next);
  }

  ModPResult res;
  res.order = seen.size();
  res.generates = GroupCard(res.order) == target;
  return res;
}

} // namespace torsiongen
