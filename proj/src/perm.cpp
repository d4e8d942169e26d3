#include "torsiongen/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

#include "torsiongen/error.hpp"

namespace torsiongen
{

Permutation::Permutation(unsigned degree)
{
  if (degree == 0)
    throw Error(Errc::InvalidParams, "permutation degree must be positive");

  _images.resize(degree);
  std::iota(_images.begin(), _images.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : _images(std::move(images))
{
  if (_images.empty())
    throw Error(Errc::InvalidParams, "permutation degree must be positive");

  std::vector<bool> seen(_images.size(), false);
  for (Point x : _images) {
    if (x >= _images.size())
      throw Error(Errc::PointOutOfRange, "image " + std::to_string(x) + " out of range");
    if (seen[x])
      throw Error(Errc::RepeatedPoint, "image " + std::to_string(x) + " repeated");
    seen[x] = true;
  }
}

Permutation Permutation::cycle(unsigned degree, std::span<long const> points)
{
  Permutation p(degree);
  long const n = degree;
  std::vector<Point> reduced;
  reduced.reserve(points.size());
  for (long x : points)
    reduced.push_back(static_cast<Point>(((x % n) + n) % n));

  std::vector<bool> used(degree, false);
  for (Point x : reduced) {
    if (used[x])
      throw Error(Errc::RepeatedPoint, "point " + std::to_string(x) + " repeated in cycle");
    used[x] = true;
  }

  for (std::size_t i = 0; i < reduced.size(); ++i)
    p._images[reduced[i]] = reduced[(i + 1) % reduced.size()];

  return p;
}

Permutation Permutation::cycle(unsigned degree, std::initializer_list<long> points)
{
  return cycle(degree, std::span<long const>(points.begin(), points.size()));
}

bool Permutation::is_identity() const noexcept
{
  for (Point x = 0; x < _images.size(); ++x) {
    if (_images[x] != x)
      return false;
  }
  return true;
}

Permutation Permutation::inverse() const
{
  std::vector<Point> inv(_images.size());
  for (Point x = 0; x < _images.size(); ++x)
    inv[_images[x]] = x;

  Permutation res;
  res._images = std::move(inv);
  return res;
}

Point Permutation::first_moved() const noexcept
{
  for (Point x = 0; x < _images.size(); ++x) {
    if (_images[x] != x)
      return x;
  }
  return degree();
}

Permutation compose(Permutation const &p, Permutation const &q)
{
  if (p.degree() != q.degree())
    throw Error(Errc::DegreeMismatch,
                std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));

  std::vector<Point> r(p.degree());
  for (Point x = 0; x < r.size(); ++x)
    r[x] = p[q[x]];

  return Permutation(std::move(r));
}

Permutation operator*(Permutation const &p, Permutation const &q)
{
  return compose(p, q);
}

Permutation power(Permutation const &p, long long e)
{
  // Walk each cycle once instead of repeated squaring.
  unsigned const n = p.degree();
  std::vector<Point> r(n);
  std::vector<bool> done(n, false);
  std::vector<Point> cyc;

  for (Point start = 0; start < n; ++start) {
    if (done[start])
      continue;

    cyc.clear();
    for (Point x = start; !done[x]; x = p[x]) {
      done[x] = true;
      cyc.push_back(x);
    }

    long long const len = static_cast<long long>(cyc.size());
    long long const shift = ((e % len) + len) % len;
    for (long long i = 0; i < len; ++i)
      r[cyc[i]] = cyc[(i + shift) % len];
  }

  return Permutation(std::move(r));
}

Permutation commutator(Permutation const &p, Permutation const &q)
{
  return p.inverse() * q.inverse() * p * q;
}

unsigned long long order_of(Permutation const &p)
{
  unsigned long long result = 1;
  for (auto const &c : cycles_of(p).cycles)
    result = std::lcm(result, static_cast<unsigned long long>(c.size()));
  return result;
}

Parity parity(Permutation const &p)
{
  std::size_t transpositions = 0;
  for (auto const &c : cycles_of(p).cycles)
    transpositions += c.size() - 1;
  return transpositions % 2 == 0 ? Parity::Even : Parity::Odd;
}

CycleDecomposition cycles_of(Permutation const &p)
{
  CycleDecomposition d;
  d.degree = p.degree();

  std::vector<bool> done(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (done[start] || p[start] == start)
      continue;

    std::vector<Point> c;
    for (Point x = start; !done[x]; x = p[x]) {
      done[x] = true;
      c.push_back(x);
    }
    d.cycles.push_back(std::move(c));
  }

  return d;
}

Permutation from_cycles(CycleDecomposition const &d)
{
  std::vector<Point> images(d.degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(d.degree, false);

  for (auto const &c : d.cycles) {
    for (Point x : c) {
      if (x >= d.degree)
        throw Error(Errc::PointOutOfRange, "point " + std::to_string(x));
      if (used[x])
        throw Error(Errc::RepeatedPoint, "point " + std::to_string(x));
      used[x] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i)
      images[c[i]] = c[(i + 1) % c.size()];
  }

  return Permutation(std::move(images));
}

Permutation parse_cycles(std::string_view text, unsigned degree)
{
  CycleDecomposition d;
  d.degree = degree;

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };

  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw Error(Errc::MalformedCycle, "expected '(' at offset " + std::to_string(i));
    ++i;

    std::vector<Point> c;
    for (;;) {
      skip_ws();
      if (i >= text.size())
        throw Error(Errc::MalformedCycle, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(Errc::MalformedCycle,
                    std::string("unexpected character '") + text[i] + "'");

      unsigned long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v >= degree)
          throw Error(Errc::PointOutOfRange,
                      "label exceeds degree " + std::to_string(degree));
        ++i;
      }
      c.push_back(static_cast<Point>(v));
    }

    // "()" and 1-cycles are permitted and contribute nothing.
    if (c.size() == 1) {
      d.cycles.push_back(c);
    } else if (c.size() > 1) {
      d.cycles.push_back(std::move(c));
    }
    skip_ws();
  }

  return from_cycles(d);
}

std::string to_cycle_string(Permutation const &p)
{
  auto const d = cycles_of(p);
  if (d.cycles.empty())
    return "()";

  std::ostringstream os;
  for (auto const &c : d.cycles) {
    os << '(';
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j)
        os << ' ';
      os << c[j];
    }
    os << ')';
  }
  return os.str();
}

std::ostream &operator<<(std::ostream &os, Permutation const &p)
{
  return os << to_cycle_string(p);
}

} // namespace torsiongen
