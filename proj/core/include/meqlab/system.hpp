#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "meqlab/group.hpp"
#include "meqlab/point.hpp"

namespace meqlab {

using Rng = std::mt19937_64;

/// A Z-action on a compact metric space. Implementations are immutable and
/// every member is safe to call concurrently.
class System {
 public:
  System(std::string id, std::string description, std::string literal_syntax, bool exact);
  virtual ~System() = default;

  System(const System&) = delete;
  System& operator=(const System&) = delete;

  const std::string& id() const { return id_; }
  const std::string& description() const { return description_; }
  /// Mini-syntax accepted by parse_point.
  const std::string& literal_syntax() const { return literal_syntax_; }
  /// Symbolic systems have exact dyadic distances; the rest use doubles.
  bool exact() const { return exact_; }

  virtual double diameter() const = 0;
  virtual bool owns(const Point& x) const { return x.system == id_; }

  /// g.x
  Point act(const Point& x, GroupElement g) const;
  /// d(x, x'); exactly 0 on equal points, bitwise symmetric.
  double dist(const Point& x, const Point& y) const;

  /// g.x for g = lo..hi.
  std::vector<Point> orbit(const Point& x, std::int64_t lo, std::int64_t hi) const;
  /// d(g.x, g.y) for g = lo..hi.
  std::vector<double> orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                      std::int64_t hi) const;

  Point random_point(Rng& rng) const;
  Point parse_point(const std::string& literal) const;
  std::string format_point(const Point& x) const;

  /// Throws UnknownSystemError / CrossSystemError when x is not ours.
  void require_owned(const Point& x) const;

 protected:
  Point make_point(Payload payload) const { return Point{id_, std::move(payload)}; }

  virtual Point do_act(const Point& x, std::int64_t g) const = 0;
  virtual double do_dist(const Point& x, const Point& y) const = 0;
  virtual std::vector<Point> do_orbit(const Point& x, std::int64_t lo, std::int64_t hi) const;
  virtual std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                                 std::int64_t hi) const;
  virtual Point do_random_point(Rng& rng) const = 0;
  virtual Point do_parse_point(const std::string& literal) const = 0;
  virtual std::string do_format_point(const Point& x) const = 0;

 private:
  std::string id_;
  std::string description_;
  std::string literal_syntax_;
  bool exact_;
};

/// Two-sided binary sequences with d(x, x') = 2^-min{|n| : x_n != x'_n}.
class SubshiftSystem : public System {
 public:
  using System::System;

  double diameter() const override { return 1.0; }

  /// x_n for n = lo..hi.
  std::vector<std::uint8_t> coordinates(const Point& x, std::int64_t lo, std::int64_t hi) const;
  std::uint8_t coordinate(const Point& x, std::int64_t n) const;

  /// Distances below 2^-1074 are not representable; differing points whose
  /// first disagreement lies beyond |n| = 1074 report this floor.
  static constexpr int kMaxScan = 1074;

 protected:
  virtual std::vector<std::uint8_t> do_coordinates(const Point& x, std::int64_t lo,
                                                   std::int64_t hi) const = 0;

  double do_dist(const Point& x, const Point& y) const override;
  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override;
};

}  // namespace meqlab
