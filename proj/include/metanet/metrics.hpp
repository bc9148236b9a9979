#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "metanet/netcore.hpp"

namespace metanet {

/// Co-occurrence counts of two labellings of the same objects.
struct ContingencyTable {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> counts;  // row-major rows x cols
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t n = 0;

  std::int64_t at(int i, int j) const { return counts[static_cast<std::size_t>(i) * cols + j]; }
};

ContingencyTable contingency(const Partition& u, const Partition& v);

/// Shannon entropy of the group-size distribution, bits.
double partition_entropy(const Partition& u);
double partition_entropy(std::span<const std::int64_t> sizes, std::int64_t n);
/// Mutual information, bits.
double mutual_information(const Partition& u, const Partition& v);
double mutual_information(const ContingencyTable& table);

enum class Normalization { sqrt, avg, max };

/// I(u,v) / norm(H(u), H(v)). When the denominator vanishes the value is 1 for
/// two identical constant partitions and 0 otherwise.
double nmi(const Partition& u, const Partition& v, Normalization norm = Normalization::sqrt);

enum class ExpectationMode { closed_form, brute_force };

/// Expected mutual information (bits) over pairs of partitions with the group
/// sizes of u and v. closed_form uses the hypergeometric sum; brute_force
/// averages over every such pair and is capped at 8 objects.
double expected_mi(const Partition& u, const Partition& v, ExpectationMode mode = ExpectationMode::closed_form);
/// Closed form from marginals only.
double expected_mi(std::span<const std::int64_t> row_sums, std::span<const std::int64_t> col_sums, std::int64_t n);

struct AmiResult {
  double value = 0.0;
  /// Set when sqrt(H(u)H(v)) == E[I] away from the boundary partitions; value is then 0.
  bool degenerate = false;
};

/// (I - E[I]) / (sqrt(H(u)H(v)) - E[I]) with the boundary conventions
/// ami(1,1) = ami(N,N) = 1, ami(u,1) = 0 for u != 1, ami(u,N) = 0 for u != N.
double ami(const Partition& u, const Partition& v);
AmiResult ami_detail(const Partition& u, const Partition& v);

/// Variation of information H(u) + H(v) - 2 I(u,v), bits.
double vi(const Partition& u, const Partition& v);

/// Bell number B_n (exact up to n = 25).
std::uint64_t bell_number(int n);

constexpr int kDefaultEnumerationCap = 12;

/// Streams every set partition of n objects once, as restricted growth strings
/// in lexicographic order.
class SetPartitions {
 public:
  explicit SetPartitions(int n, int cap = kDefaultEnumerationCap);

  /// Advances to the next partition; false once exhausted. The first call yields
  /// the all-in-one-group partition.
  bool next();
  const std::vector<int>& current() const { return rgs_; }
  Partition partition() const { return Partition(rgs_); }

 private:
  int n_;
  bool started_ = false;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
};

/// Collects all set partitions of n objects.
std::vector<Partition> enumerate_partitions(int n, int cap = kDefaultEnumerationCap);

/// Mean of ami(u, v) over all B_n partitions v of n = u.size() objects.
double homogeneity_profile(const Partition& u, int cap = kDefaultEnumerationCap);

struct HomogeneityRow {
  std::vector<int> group_sizes;  // descending
  int members = 0;
  double mean_ami_min = 0.0;  // min over members of the class
  double mean_ami_max = 0.0;
};

/// Mean AMI to all partitions for every partition of n objects, summarized by
/// group-size class.
std::vector<HomogeneityRow> homogeneity_by_class(int n, int cap = kDefaultEnumerationCap);

/// Mean AMI for every partition of n objects, in enumeration order.
std::vector<double> homogeneity_all(int n, int cap = kDefaultEnumerationCap);

}  // namespace metanet
