#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace hodge::hn {

using Rational = boost::rational<long long>;

/// Harder–Narasimhan type as blocks (slope, multiplicity) with strictly
/// decreasing slopes.
struct HNType {
  std::vector<std::pair<Rational, int>> entries;

  static HNType from_expanded(const std::vector<Rational>& mu);
  std::vector<Rational> expanded() const;
  int rank() const;
  Rational total() const;
  std::string to_string() const;
  friend bool operator==(const HNType& a, const HNType& b) { return a.entries == b.entries; }
};

Rational slope(long long deg, long long rank);

/// True iff every partial sum of lambda is <= that of mu.
bool dominance_leq(const HNType& lambda, const HNType& mu);

/// mu_i = (n + 1 - 2i)(g - 1)
HNType oper_hn_type(int n, int g);

struct FiltrationDegrees {
  int n = 0;
  int g = 0;
  std::vector<long long> degs;  // deg V_j for j = 1..n
};
/// deg V_j = j deg L + (nj - j(j+1)/2)(2g - 2) with deg L = -(n-1)(g-1)
FiltrationDegrees filtration_degrees(int n, int g);

/// Unstable types of integer-degree data with total degree 0, strictly
/// decreasing slopes and consecutive slope gaps <= 2g - 2.
std::vector<HNType> enumerate_admissible_types(int n, int g);

struct MaximalityReport {
  int n = 0;
  int g = 0;
  std::size_t count = 0;
  bool all_dominated = false;
  bool equality_only_at_oper = false;
  bool verdict() const { return all_dominated && equality_only_at_oper; }
};
MaximalityReport verify_oper_maximality(int n, int g);

/// CSV with header index,blocks,expanded
std::string types_csv(const std::vector<HNType>& types);

}  // namespace hodge::hn
