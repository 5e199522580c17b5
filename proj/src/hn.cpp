#include "hodge/hn.hpp"

#include <functional>
#include <sstream>

#include "hodge/common.hpp"

namespace hodge::hn {

namespace {

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

}  // namespace

HNType HNType::from_expanded(const std::vector<Rational>& mu) {
  HNType t;
  for (const auto& m : mu) {
    if (!t.entries.empty() && t.entries.back().first == m) {
      ++t.entries.back().second;
      continue;
    }
    require(t.entries.empty() || m < t.entries.back().first, "HNType: expanded slopes must be weakly decreasing");
    t.entries.emplace_back(m, 1);
  }
  return t;
}

std::vector<Rational> HNType::expanded() const {
  std::vector<Rational> out;
  for (const auto& [s, m] : entries) out.insert(out.end(), static_cast<std::size_t>(m), s);
  return out;
}

int HNType::rank() const {
  int r = 0;
  for (const auto& e : entries) r += e.second;
  return r;
}

Rational HNType::total() const {
  Rational t = 0;
  for (const auto& [s, m] : entries) t += s * Rational(m);
  return t;
}

std::string HNType::to_string() const {
  std::ostringstream os;
  os << '(';
  const auto e = expanded();
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << rational_text(e[i]);
  os << ')';
  return os.str();
}

Rational slope(long long deg, long long rank) {
  require(rank >= 1, "slope: rank must be positive");
  return Rational(deg, rank);
}

bool dominance_leq(const HNType& lambda, const HNType& mu) {
  const auto a = lambda.expanded();
  const auto b = mu.expanded();
  require(a.size() == b.size(), "dominance_leq: types have different ranks");
  require(lambda.total() == mu.total(), "dominance_leq: types have different totals");
  Rational sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa > sb) return false;
  }
  return true;
}

HNType oper_hn_type(int n, int g) {
  require(n >= 1 && g >= 2, "oper_hn_type: need n >= 1 and g >= 2");
  std::vector<Rational> mu;
  for (int i = 1; i <= n; ++i) mu.emplace_back(static_cast<long long>(n + 1 - 2 * i) * (g - 1));
  return HNType::from_expanded(mu);
}

FiltrationDegrees filtration_degrees(int n, int g) {
  require(n >= 1 && g >= 2, "filtration_degrees: need n >= 1 and g >= 2");
  FiltrationDegrees f{n, g, {}};
  const long long deg_l = -static_cast<long long>(n - 1) * (g - 1);
  for (long long j = 1; j <= n; ++j) f.degs.push_back(j * deg_l + (n * j - j * (j + 1) / 2) * (2LL * g - 2));
  return f;
}

std::vector<HNType> enumerate_admissible_types(int n, int g) {
  require(n >= 1 && g >= 2, "enumerate_admissible_types: need n >= 1 and g >= 2");
  require(n <= 5 && g <= 3, "enumerate_admissible_types: enumeration budget is n <= 5, g <= 3");
  const long long gap = 2LL * g - 2;
  std::vector<HNType> out;
  std::vector<int> ranks;
  std::vector<long long> degs;

  // degrees for a fixed rank composition, block by block
  std::function<void(std::size_t, long long)> fill = [&](std::size_t i, long long used) {
    const std::size_t k = ranks.size();
    const long long ni = ranks[i];
    if (i + 1 == k) {
      const long long d = -used;
      const Rational s(d, ni);
      const Rational prev(degs[i - 1], ranks[i - 1]);
      if (!(s < prev) || prev - s > Rational(gap)) return;
      degs.push_back(d);
      HNType t;
      for (std::size_t b = 0; b < k; ++b) t.entries.emplace_back(Rational(degs[b], ranks[b]), ranks[b]);
      out.push_back(std::move(t));
      degs.pop_back();
      return;
    }
    // every slope lies within (k-1) gaps of every other, and the weighted mean is 0
    const long long span = static_cast<long long>(k - 1) * gap;
    for (long long d = -ni * span; d <= ni * span; ++d) {
      const Rational s(d, ni);
      if (i > 0) {
        const Rational prev(degs[i - 1], ranks[i - 1]);
        if (!(s < prev) || prev - s > Rational(gap)) continue;
      }
      degs.push_back(d);
      fill(i + 1, used + d);
      degs.pop_back();
    }
  };

  std::function<void(int)> compose = [&](int remaining) {
    if (remaining == 0) {
      if (ranks.size() >= 2) fill(0, 0);
      return;
    }
    for (int r = 1; r <= remaining; ++r) {
      ranks.push_back(r);
      compose(remaining - r);
      ranks.pop_back();
    }
  };
  compose(n);
  return out;
}

MaximalityReport verify_oper_maximality(int n, int g) {
  MaximalityReport r{n, g};
  const auto types = enumerate_admissible_types(n, g);
  const HNType oper = oper_hn_type(n, g);
  r.count = types.size();
  r.all_dominated = true;
  r.equality_only_at_oper = true;
  for (const auto& t : types) {
    if (!dominance_leq(t, oper)) r.all_dominated = false;
    // lambda ⊴ oper and oper ⊴ lambda means equal partial sums, i.e. equal types
    if (dominance_leq(oper, t) && !(t == oper)) r.equality_only_at_oper = false;
  }
  return r;
}

std::string types_csv(const std::vector<HNType>& types) {
  std::ostringstream os;
  os << "index,blocks,expanded\n";
  for (std::size_t i = 0; i < types.size(); ++i) {
    os << i << ",\"";
    for (std::size_t b = 0; b < types[i].entries.size(); ++b) {
      const auto& [s, m] = types[i].entries[b];
      os << (b ? ";" : "") << rational_text(s) << 'x' << m;
    }
    os << "\",\"" << types[i].to_string() << "\"\n";
  }
  return os.str();
}

}  // namespace hodge::hn
