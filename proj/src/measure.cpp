#include "schatten/measure.hpp"

#include <cmath>
#include <sstream>

#include "schatten/parallel.hpp"

namespace schatten {

double BinnedMeasure::total() const {
  double t = inner_mass;
  for (double m : mass) t += m;
  return t;
}

std::string BinnedMeasure::to_csv() const {
  std::ostringstream os;
  os << "bin_id,mass\n";
  os << "-1," << fmt_g17(inner_mass) << '\n';
  for (std::size_t i = 0; i < mass.size(); ++i) os << i << ',' << fmt_g17(mass[i]) << '\n';
  return os.str();
}

namespace {

struct NodeSet {
  std::vector<double> t;
  std::vector<double> w;
};

BinnedMeasure accumulate(const Symbol& phi, const BinSet& bins, const NodeSet& nodes) {
  const std::int64_t n = static_cast<std::int64_t>(nodes.t.size());
  std::vector<int> bin_of(static_cast<std::size_t>(n));
  par::parallel_for(n, [&](std::int64_t i) {
    const cplx w = phi.boundary_value(nodes.t[static_cast<std::size_t>(i)]);
    bin_of[static_cast<std::size_t>(i)] = bins.locate(w);
  });

  BinnedMeasure mu;
  mu.mass.assign(static_cast<std::size_t>(bins.n_bins()), 0.0);
  mu.count.assign(static_cast<std::size_t>(bins.n_bins()), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const int b = bin_of[static_cast<std::size_t>(i)];
    const double wt = nodes.w[static_cast<std::size_t>(i)];
    if (b < 0) {
      mu.inner_mass += wt;
      ++mu.inner_count;
    } else {
      mu.mass[static_cast<std::size_t>(b)] += wt;
      ++mu.count[static_cast<std::size_t>(b)];
    }
  }
  return mu;
}

}  // namespace

BinnedMeasure pullback_uniform(const Symbol& phi, const BinSet& bins, std::int64_t n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("pullback: need nodes");
  NodeSet nodes;
  nodes.t.resize(static_cast<std::size_t>(n_nodes));
  const double w = two_pi / static_cast<double>(n_nodes);
  for (std::int64_t k = 0; k < n_nodes; ++k)
    nodes.t[static_cast<std::size_t>(k)] = two_pi * static_cast<double>(k) / static_cast<double>(n_nodes);
  nodes.w.assign(static_cast<std::size_t>(n_nodes), w);
  return accumulate(phi, bins, nodes);
}

BinnedMeasure pullback_graded(const Symbol& phi, const BinSet& bins, int n_blocks,
                              int nodes_per_block) {
  if (n_blocks < 1 || n_blocks > 50 || nodes_per_block < 1)
    throw std::invalid_argument("pullback: bad grading");
  NodeSet nodes;
  for (int m = 0; m < n_blocks; ++m) {
    const double hi = pi * std::ldexp(1.0, -m);
    const double lo = 0.5 * hi;
    const double w = (hi - lo) / nodes_per_block;
    for (int j = 0; j < nodes_per_block; ++j) {
      const double off = lo + (j + 0.5) * w;
      nodes.t.push_back(off);
      nodes.w.push_back(w);
      nodes.t.push_back(two_pi - off);
      nodes.w.push_back(w);
    }
  }
  const double gap = pi * std::ldexp(1.0, -n_blocks);
  const double w = 2.0 * gap / nodes_per_block;
  for (int j = 0; j < nodes_per_block; ++j) {
    double t = -gap + (j + 0.5) * w;
    if (t < 0.0) t += two_pi;
    nodes.t.push_back(t);
    nodes.w.push_back(w);
  }
  return accumulate(phi, bins, nodes);
}

BinnedMeasure bin_atoms(const std::vector<cplx>& points, const std::vector<double>& weights,
                        const BinSet& bins) {
  if (points.size() != weights.size()) throw std::invalid_argument("bin_atoms: size mismatch");
  BinnedMeasure mu;
  mu.mass.assign(static_cast<std::size_t>(bins.n_bins()), 0.0);
  mu.count.assign(static_cast<std::size_t>(bins.n_bins()), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int b = bins.locate(points[i]);
    if (b < 0) {
      mu.inner_mass += weights[i];
      ++mu.inner_count;
    } else {
      mu.mass[static_cast<std::size_t>(b)] += weights[i];
      ++mu.count[static_cast<std::size_t>(b)];
    }
  }
  return mu;
}

}  // namespace schatten
