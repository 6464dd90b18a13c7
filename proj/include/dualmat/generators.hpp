#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dualmat/dual_matrix.hpp"

namespace dualmat {

enum class GeneratorKind {
  general,
  hermitian,
  normal,
  new_dual_ep,
  dual_unitary,
  invertible_std,
  pure_infinitesimal,
  rank_deficient,     // rank-deficient standard part, generic dual part
  repeated_singular,  // standard part with repeated singular values
  partial_isometry,   // Sigma_1 = I, Sigma_2 = 0, arbitrary W
  ndmpi_idempotent,   // Sigma_1 = K through a dual CS construction
  nilpotent,          // nilpotent standard part; A_e has no group inverse when A_s != 0
};

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> generator_kind_from_string(std::string_view name);
const std::vector<GeneratorKind>& all_generator_kinds();

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::general;
  Index n = 4;
  /// Column count for the kinds that allow rectangular output (general,
  /// pure_infinitesimal, rank_deficient, repeated_singular); 0 means square.
  Index cols = 0;
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed config. The output satisfies the defining
/// identity of its kind by construction.
DualMatrix random_dual_matrix(const GeneratorConfig& cfg);

/// Haar unitary standard part with U_d = U_s S, S skew-Hermitian.
DualMatrix random_dual_unitary(Index n, std::uint64_t seed);

}  // namespace dualmat
