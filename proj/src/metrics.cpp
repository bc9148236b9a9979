#include "metanet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "metanet/error.hpp"

namespace metanet {

namespace {

void require_same_length(const Partition& u, const Partition& v) {
  if (u.size() != v.size())
    throw ValidationError("partitions have different lengths (" + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
}

std::vector<std::int64_t> sizes_of(const Partition& p) {
  auto s = p.group_sizes();
  return {s.begin(), s.end()};
}

std::vector<int> sorted_sizes(const Partition& p) {
  auto s = p.group_sizes();
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

bool is_one(const Partition& p) { return p.k_groups() == 1; }
bool is_singletons(const Partition& p) { return p.k_groups() == p.size(); }

// Shared by ami() and the homogeneity sweep, which precomputes the pieces.
AmiResult ami_from_parts(bool u_one, bool u_all, bool v_one, bool v_all, bool identical, double mi, double hu,
                         double hv, double emi) {
  if (u_one || v_one) return {u_one && v_one ? 1.0 : 0.0, false};
  if (u_all || v_all) return {u_all && v_all ? 1.0 : 0.0, false};
  if (identical) return {1.0, false};
  const double denom = std::sqrt(hu * hv) - emi;
  if (std::abs(denom) < 1e-12) return {0.0, true};
  return {(mi - emi) / denom, false};
}

}  // namespace

ContingencyTable contingency(const Partition& u, const Partition& v) {
  require_same_length(u, v);
  ContingencyTable t;
  t.rows = u.k_groups();
  t.cols = v.k_groups();
  t.n = u.size();
  t.counts.assign(static_cast<std::size_t>(t.rows) * t.cols, 0);
  t.row_sums.assign(static_cast<std::size_t>(t.rows), 0);
  t.col_sums.assign(static_cast<std::size_t>(t.cols), 0);
  for (int i = 0; i < u.size(); ++i) {
    ++t.counts[static_cast<std::size_t>(u[i]) * t.cols + v[i]];
    ++t.row_sums[u[i]];
    ++t.col_sums[v[i]];
  }
  return t;
}

double partition_entropy(std::span<const std::int64_t> sizes, std::int64_t n) {
  double h = 0.0;
  const double total = static_cast<double>(n);
  for (auto s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double partition_entropy(const Partition& u) {
  const auto sizes = sizes_of(u);
  return partition_entropy(sizes, u.size());
}

double mutual_information(const ContingencyTable& t) {
  double mi = 0.0;
  const double n = static_cast<double>(t.n);
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.cols; ++j) {
      const auto c = t.at(i, j);
      if (c == 0) continue;
      const double pij = static_cast<double>(c) / n;
      mi += pij * std::log2(static_cast<double>(c) * n /
                            (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
    }
  return mi;
}

double mutual_information(const Partition& u, const Partition& v) { return mutual_information(contingency(u, v)); }

double nmi(const Partition& u, const Partition& v, Normalization norm) {
  const auto t = contingency(u, v);
  const double hu = partition_entropy(t.row_sums, t.n);
  const double hv = partition_entropy(t.col_sums, t.n);
  double denom = 0.0;
  switch (norm) {
    case Normalization::sqrt: denom = std::sqrt(hu * hv); break;
    case Normalization::avg: denom = 0.5 * (hu + hv); break;
    case Normalization::max: denom = std::max(hu, hv); break;
  }
  if (denom <= 0.0) return (is_one(u) && is_one(v)) ? 1.0 : 0.0;
  return mutual_information(t) / denom;
}

double expected_mi(std::span<const std::int64_t> row_sums, std::span<const std::int64_t> col_sums, std::int64_t n) {
  const double nn = static_cast<double>(n);
  const double lg_n = std::lgamma(nn + 1.0);
  double emi = 0.0;
  for (auto a : row_sums) {
    for (auto b : col_sums) {
      const double ad = static_cast<double>(a);
      const double bd = static_cast<double>(b);
      const double fixed = std::lgamma(ad + 1.0) + std::lgamma(bd + 1.0) + std::lgamma(nn - ad + 1.0) +
                           std::lgamma(nn - bd + 1.0) - lg_n;
      const auto lo = std::max<std::int64_t>(1, a + b - n);
      const auto hi = std::min(a, b);
      for (auto c = lo; c <= hi; ++c) {
        const double cd = static_cast<double>(c);
        const double log_prob = fixed - std::lgamma(cd + 1.0) - std::lgamma(ad - cd + 1.0) -
                                std::lgamma(bd - cd + 1.0) - std::lgamma(nn - ad - bd + cd + 1.0);
        emi += cd / nn * std::log2(nn * cd / (ad * bd)) * std::exp(log_prob);
      }
    }
  }
  return emi;
}

double expected_mi(const Partition& u, const Partition& v, ExpectationMode mode) {
  require_same_length(u, v);
  if (mode == ExpectationMode::closed_form) {
    const auto a = sizes_of(u);
    const auto b = sizes_of(v);
    return expected_mi(a, b, u.size());
  }
  constexpr int kBruteForceCap = 8;
  if (u.size() > kBruteForceCap)
    throw CapacityError("brute-force expected MI is limited to " + std::to_string(kBruteForceCap) + " objects");
  const auto su = sorted_sizes(u);
  const auto sv = sorted_sizes(v);
  std::vector<Partition> class_u, class_v;
  SetPartitions all(u.size(), kBruteForceCap);
  while (all.next()) {
    auto p = all.partition();
    const auto s = sorted_sizes(p);
    if (s == su) class_u.push_back(p);
    if (s == sv) class_v.push_back(p);
  }
  double total = 0.0;
  for (const auto& a : class_u)
    for (const auto& b : class_v) total += mutual_information(a, b);
  return total / (static_cast<double>(class_u.size()) * static_cast<double>(class_v.size()));
}

AmiResult ami_detail(const Partition& u, const Partition& v) {
  const auto t = contingency(u, v);
  const double hu = partition_entropy(t.row_sums, t.n);
  const double hv = partition_entropy(t.col_sums, t.n);
  const double mi = mutual_information(t);
  const bool boundary = is_one(u) || is_one(v) || is_singletons(u) || is_singletons(v);
  const double emi = boundary ? 0.0 : expected_mi(t.row_sums, t.col_sums, t.n);
  return ami_from_parts(is_one(u), is_singletons(u), is_one(v), is_singletons(v), u.same_partition(v), mi, hu, hv,
                        emi);
}

double ami(const Partition& u, const Partition& v) { return ami_detail(u, v).value; }

double vi(const Partition& u, const Partition& v) {
  // H(U|V) + H(V|U) cell by cell, so identical partitions give exactly 0
  const auto t = contingency(u, v);
  const double n = static_cast<double>(t.n);
  double d = 0.0;
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.cols; ++j) {
      const auto c = t.at(i, j);
      if (c == 0) continue;
      const double x = static_cast<double>(c);
      d -= x / n * (std::log2(x / static_cast<double>(t.row_sums[i])) + std::log2(x / static_cast<double>(t.col_sums[j])));
    }
  return std::max(0.0, d);
}

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw CapacityError("Bell numbers are tabulated for 0 <= n <= 25");
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

SetPartitions::SetPartitions(int n, int cap) : n_(n) {
  if (n < 1) throw ValidationError("set partitions need at least one object");
  if (n > cap) throw CapacityError("enumeration of " + std::to_string(n) + " objects exceeds the cap of " +
                                   std::to_string(cap));
  rgs_.assign(static_cast<std::size_t>(n), 0);
  prefix_max_.assign(static_cast<std::size_t>(n), 0);
}

bool SetPartitions::next() {
  if (!started_) {
    started_ = true;
    return true;
  }
  for (int i = n_ - 1; i >= 1; --i) {
    if (rgs_[i] <= prefix_max_[i - 1]) {
      ++rgs_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
      for (int j = i + 1; j < n_; ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

std::vector<Partition> enumerate_partitions(int n, int cap) {
  std::vector<Partition> out;
  SetPartitions it(n, cap);
  while (it.next()) out.push_back(it.partition());
  return out;
}

std::vector<double> homogeneity_all(int n, int cap) {
  const auto parts = enumerate_partitions(n, cap);
  const std::size_t count = parts.size();

  std::map<std::vector<int>, int> class_index;
  std::vector<int> cls(count);
  std::vector<double> entropy(count);
  std::vector<std::vector<std::int64_t>> class_sizes;
  for (std::size_t i = 0; i < count; ++i) {
    auto key = sorted_sizes(parts[i]);
    auto [it, inserted] = class_index.try_emplace(key, static_cast<int>(class_sizes.size()));
    if (inserted) class_sizes.emplace_back(key.begin(), key.end());
    cls[i] = it->second;
    entropy[i] = partition_entropy(parts[i]);
  }
  const auto n_classes = class_sizes.size();
  std::vector<double> emi(n_classes * n_classes);
  for (std::size_t a = 0; a < n_classes; ++a)
    for (std::size_t b = 0; b < n_classes; ++b) emi[a * n_classes + b] = expected_mi(class_sizes[a], class_sizes[b], n);

  std::vector<double> means(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& u = parts[i];
    double total = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      const auto& v = parts[j];
      const double mi = mutual_information(contingency(u, v));
      total += ami_from_parts(is_one(u), is_singletons(u), is_one(v), is_singletons(v), i == j, mi, entropy[i],
                              entropy[j], emi[cls[i] * n_classes + cls[j]])
                   .value;
    }
    means[i] = total / static_cast<double>(count);
  }
  return means;
}

std::vector<HomogeneityRow> homogeneity_by_class(int n, int cap) {
  const auto parts = enumerate_partitions(n, cap);
  const auto means = homogeneity_all(n, cap);
  std::map<std::vector<int>, HomogeneityRow, std::greater<>> rows;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto key = sorted_sizes(parts[i]);
    auto [it, inserted] = rows.try_emplace(key);
    auto& row = it->second;
    if (inserted) {
      row.group_sizes = key;
      row.mean_ami_min = row.mean_ami_max = means[i];
    }
    ++row.members;
    row.mean_ami_min = std::min(row.mean_ami_min, means[i]);
    row.mean_ami_max = std::max(row.mean_ami_max, means[i]);
  }
  std::vector<HomogeneityRow> out;
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  return out;
}

double homogeneity_profile(const Partition& u, int cap) {
  SetPartitions it(u.size(), cap);
  double total = 0.0;
  std::uint64_t count = 0;
  while (it.next()) {
    total += ami(u, it.partition());
    ++count;
  }
  return total / static_cast<double>(count);
}

}  // namespace metanet
