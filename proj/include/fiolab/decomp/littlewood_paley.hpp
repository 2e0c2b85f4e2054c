#pragma once

// Littlewood-Paley shells on the dual grid.  The mother cutoff is built
// from the smooth transition theta (1 below 1, 0 above 2), so that
//   Psi_0(xi) = theta(|xi|),   Psi_j(xi) = theta(2^{-j}|xi|) - theta(2^{-j+1}|xi|)
// and partial sums telescope exactly: sum_{j<=J} Psi_j = theta(2^{-J}|xi|),
// which equals 1 on |xi| <= 2^J.  supp Psi_j is the shell [2^{j-1}, 2^{j+1}].

#include <vector>

#include "fiolab/core/grid.hpp"

namespace fiolab {

class LittlewoodPaley {
  public:
    // The shell count is driven by the Nyquist bound: the partition must sum
    // to 1 on every dual point below 0.9 Nyquist, so 2^{j_max} has to clear
    // that band.  (The top shell's support is then truncated by the grid;
    // experiments that need fully resolved shells stay at j well below j_max.)
    static LittlewoodPaley build(const GridSpec& grid) {
        LittlewoodPaley lp;
        lp.grid_ = grid;
        lp.j_max_ = static_cast<int>(std::ceil(std::log2(0.9 * grid.nyquist())));
        if (lp.j_max_ < 3)
            throw std::invalid_argument("LittlewoodPaley: grid too coarse to host 3 shells");
        lp.shells_.resize(lp.j_max_ + 1);
        for (int j = 0; j <= lp.j_max_; ++j) {
            auto& shell = lp.shells_[j];
            shell.resize(grid.total_points());
            for (std::size_t i = 0; i < shell.size(); ++i)
                shell[i] = psi_level(j, norm2(grid.frequency(i), grid.dim));
        }
        return lp;
    }

    int j_max() const { return j_max_; }
    const GridSpec& grid() const { return grid_; }

    // Callable form, valid for any xi (not just grid points).
    double psi(int j, const Vec& xi) const {
        check_level(j);
        return psi_level(j, norm2(xi, grid_.dim));
    }

    // Sampled form on the dual grid.
    const std::vector<double>& shell(int j) const {
        check_level(j);
        return shells_[j];
    }

    // Partial sum over j <= top at a dual grid point (telescopes to a single
    // theta evaluation; computed as an honest sum for test purposes).
    double partial_sum(std::size_t flat, int top) const {
        double s = 0.0;
        for (int j = 0; j <= std::min(top, j_max_); ++j) s += shells_[j][flat];
        return s;
    }

  private:
    static double psi_level(int j, double r) {
        if (j == 0) return smooth_step_down(r);
        return smooth_step_down(std::ldexp(r, -j)) - smooth_step_down(std::ldexp(r, -j + 1));
    }
    void check_level(int j) const {
        if (j < 0 || j > j_max_)
            throw std::invalid_argument("LittlewoodPaley: level out of range");
    }

    GridSpec grid_;
    int j_max_ = 0;
    std::vector<std::vector<double>> shells_;
};

}  // namespace fiolab
