#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "metanet/netcore.hpp"
#include "metanet/rng.hpp"

namespace metanet {

struct LandscapePoint {
  double x = 0.0;
  double y = 0.0;
  double score = 0.0;
  std::string partition_id;

  friend bool operator==(const LandscapePoint&, const LandscapePoint&) = default;
};

/// Each sample mixes two distinct parents: a uniform q in 0..N, a uniform
/// q-subset of nodes labelled as in the first parent, the rest as in the second.
std::vector<Partition> crossover_sample(const std::vector<Partition>& parents, int n_samples, Rng& rng);

/// Row-major symmetric matrix of pairwise variation of information.
std::vector<double> vi_matrix(const std::vector<Partition>& partitions, int threads = 0);

/// Classical (Torgerson) MDS of an n x n distance matrix into the plane.
/// Negative eigenvalues are clamped to zero; each axis is flipped so that its
/// first nonzero coordinate is positive.
std::vector<std::array<double, 2>> mds_embed(const std::vector<double>& dist, int n);

/// CSV with header x,y,score,partition_id, one row per point in input order.
void export_surface(const std::vector<LandscapePoint>& points, std::ostream& out);
void export_surface_file(const std::vector<LandscapePoint>& points, const std::string& path);
std::vector<LandscapePoint> read_surface(std::istream& in);

}  // namespace metanet
