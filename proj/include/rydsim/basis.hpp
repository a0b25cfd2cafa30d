#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string_view>

namespace rydsim {

// Two-atom state labels in the fixed ordering used by every matrix and CSV
// in this project. |R> = (|1r> + |r1>)/sqrt(2) is the symmetrized singly
// excited state of the |11> channel; the antisymmetric partner is decoupled
// by the symmetric drive and is omitted from every basis. |W> is the sink
// level for decay out of the system and exists only in the open basis.
enum StateIndex : int {
  kIdx00 = 0,
  kIdx01 = 1,
  kIdx0r = 2,
  kIdx10 = 3,
  kIdxR0 = 4,
  kIdx11 = 5,
  kIdxR = 6,
  kIdxRR = 7,
  kIdxW = 8,
};

inline constexpr std::array<std::string_view, 9> kStateNames = {
    "00", "01", "0r", "10", "r0", "11", "R", "rr", "W"};

// Reduced: blockade-limit Hamiltonian H1 + H2 + H3' on 7 states.
// Full:    H1 + H2 + H3 including |rr> (8 states).
// Open:    Full plus the |W> sink (9 states), for master-equation runs.
enum class Mode { Reduced, Full, Open };

inline int basis_dim(Mode mode) {
  switch (mode) {
    case Mode::Reduced: return 7;
    case Mode::Full: return 8;
    case Mode::Open: return 9;
  }
  throw std::invalid_argument("unknown model mode");
}

inline std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Reduced: return "reduced";
    case Mode::Full: return "full";
    case Mode::Open: return "open";
  }
  return "?";
}

// Computational subspace {00, 01, 10, 11} positions in the basis ordering.
inline constexpr std::array<int, 4> kComputationalIndices = {kIdx00, kIdx01, kIdx10, kIdx11};

// The three driven two-level subsystems: eta = 1 -> {|10>, |r0>},
// eta = 2 -> {|01>, |0r>}, eta = 3 -> {|11>, |R>} (sqrt(2)-enhanced Rabi).
struct Subspace {
  int eta;
  int lower;  // ground-pair state index
  int upper;  // singly excited state index
  double rabi_factor;
};

inline constexpr std::array<Subspace, 3> kSubspaces = {{
    {1, kIdx10, kIdxR0, 1.0},
    {2, kIdx01, kIdx0r, 1.0},
    {3, kIdx11, kIdxR, 1.41421356237309504880},
}};

inline const Subspace& subspace(int eta) {
  if (eta < 1 || eta > 3) throw std::invalid_argument("subspace eta must be 1, 2 or 3");
  return kSubspaces[static_cast<std::size_t>(eta - 1)];
}

}  // namespace rydsim
