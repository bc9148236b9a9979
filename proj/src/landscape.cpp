#include "metanet/landscape.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "metanet/error.hpp"
#include "metanet/metrics.hpp"
#include "metanet/parallel.hpp"

namespace metanet {

std::vector<Partition> crossover_sample(const std::vector<Partition>& parents, int n_samples, Rng& rng) {
  if (parents.size() < 2) throw ValidationError("crossover needs at least two parents");
  const int n = parents.front().size();
  for (const auto& p : parents)
    if (p.size() != n) throw ValidationError("parents have different lengths");

  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n_samples)));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int s = 0; s < n_samples; ++s) {
    const auto count = static_cast<std::uint64_t>(parents.size());
    const auto a = rng.uniform_index(count);
    auto b = rng.uniform_index(count - 1);
    if (b >= a) ++b;
    const int q = rng.uniform_int(n + 1);
    std::iota(order.begin(), order.end(), 0);
    // partial Fisher-Yates: first q slots are a uniform q-subset
    for (int i = 0; i < q; ++i) {
      const int j = i + rng.uniform_int(n - i);
      std::swap(order[i], order[j]);
    }
    // Offset parent-two labels so the two label sets cannot collide.
    const int shift = parents[a].k_groups();
    std::vector<int> child(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) child[i] = parents[b][i] + shift;
    for (int i = 0; i < q; ++i) child[order[i]] = parents[a][order[i]];
    out.emplace_back(std::move(child));
  }
  return out;
}

std::vector<double> vi_matrix(const std::vector<Partition>& partitions, int threads) {
  if (partitions.empty()) throw ValidationError("no partitions given");
  const std::size_t n = partitions.size();
  for (const auto& p : partitions)
    if (p.size() != partitions.front().size()) throw ValidationError("partitions have different lengths");
  std::vector<double> d(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = vi(partitions[i], partitions[j]);
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) d[i * n + j] = d[j * n + i];
  return d;
}

std::vector<std::array<double, 2>> mds_embed(const std::vector<double>& dist, int n) {
  if (n < 1 || dist.size() != static_cast<std::size_t>(n) * n) throw ValidationError("distance matrix must be n x n");
  Eigen::MatrixXd d2(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = dist[static_cast<std::size_t>(i) * n + j];
      const double b = dist[static_cast<std::size_t>(j) * n + i];
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) throw ValidationError("distance matrix is not symmetric");
      if (a < 0.0) throw ValidationError("distance matrix has negative entries");
      d2(i, j) = a * a;
    }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw Error("eigen-decomposition failed");
  // eigenvalues come in increasing order
  std::vector<std::array<double, 2>> coords(static_cast<std::size_t>(n), {0.0, 0.0});
  for (int axis = 0; axis < 2 && axis < n; ++axis) {
    const int col = n - 1 - axis;
    const double lambda = solver.eigenvalues()(col);
    if (!(lambda > 1e-12)) continue;
    Eigen::VectorXd v = solver.eigenvectors().col(col) * std::sqrt(lambda);
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    for (int i = 0; i < n; ++i) coords[i][axis] = v(i);
  }
  return coords;
}

void export_surface(const std::vector<LandscapePoint>& points, std::ostream& out) {
  if (points.empty()) throw ValidationError("no surface points");
  out << "x,y,score,partition_id\n";
  out << std::setprecision(17);
  for (const auto& p : points) {
    if (p.partition_id.find_first_of(",\n\"") != std::string::npos)
      throw ValidationError("partition id must not contain commas, quotes or newlines");
    out << p.x << ',' << p.y << ',' << p.score << ',' << p.partition_id << '\n';
  }
}

void export_surface_file(const std::vector<LandscapePoint>& points, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  export_surface(points, out);
  if (!out) throw Error("write failed: " + path);
}

std::vector<LandscapePoint> read_surface(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "x,y,score,partition_id") throw ParseError("missing surface header", 1);
  std::vector<LandscapePoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string x, y, score, id;
    if (!std::getline(row, x, ',') || !std::getline(row, y, ',') || !std::getline(row, score, ',') ||
        !std::getline(row, id))
      throw ParseError("expected 4 fields", line_no);
    try {
      points.push_back({std::stod(x), std::stod(y), std::stod(score), id});
    } catch (const std::exception&) {
      throw ParseError("bad number", line_no);
    }
  }
  return points;
}

}  // namespace metanet
