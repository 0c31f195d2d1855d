#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schatten/symbol.hpp"
#include "schatten/whitney.hpp"

namespace schatten {

// Pullback of boundary arc length (total mass 2*pi) under phi(e^{it}),
// accumulated into a bin set.  Bin lookup runs in parallel; the
// accumulation pass is serial and in node order, so the result is
// independent of the thread count.
struct BinnedMeasure {
  std::vector<double> mass;
  std::vector<std::int64_t> count;
  double inner_mass = 0.0;  // nodes with |w| < 1/2
  std::int64_t inner_count = 0;

  double total() const;
  std::string to_csv() const;  // bin_id,mass ; the -1 row is the inner bucket
};

// equispaced nodes t_k = 2 pi k / n, equal weights
BinnedMeasure pullback_uniform(const Symbol& phi, const BinSet& bins, std::int64_t n_nodes);

// dyadic angular blocks toward t = 0 (two-sided), nodes_per_block midpoint
// nodes in each; resolves power-law corner masses that equispaced nodes
// cannot reach.  Block widths telescope, so the weights still sum to 2*pi.
BinnedMeasure pullback_graded(const Symbol& phi, const BinSet& bins, int n_blocks,
                              int nodes_per_block);

// point masses
BinnedMeasure bin_atoms(const std::vector<cplx>& points, const std::vector<double>& weights,
                        const BinSet& bins);

}  // namespace schatten
