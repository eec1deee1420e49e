#pragma once

#include "hiercache/delivery.hpp"
#include "hiercache/library.hpp"
#include "hiercache/model.hpp"
#include "hiercache/scheme_hier.hpp"

namespace hiercache {

/// One mirror serving all K users. Users keep coded layer-1 chunks; the
/// mirror keeps a theta-prefix of every layer-2 part.
class SingleMirrorConfig {
 public:
  int users() const { return k_; }
  int n_files() const { return n_files_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& m1() const { return m1_; }
  /// M1 / (N(1 - alpha)); 0 when alpha = 1.
  const Rational& theta() const { return theta_; }
  /// alpha / K, fixed by the scheme.
  Rational m2() const { return alpha_ / k_; }

 private:
  friend SingleMirrorConfig make_single_config(int, int, const Rational&, const Rational&);
  int k_ = 0;
  int n_files_ = 0;
  Rational alpha_ = 0;
  Rational m1_ = 0;
  Rational theta_ = 0;
};

/// Throws RangeError unless 0 <= M1 <= (1 - alpha)N, ConstraintError if
/// N > K with alpha != 0.
SingleMirrorConfig make_single_config(int users, int n_files, const Rational& alpha,
                                      const Rational& m1);

/// Upper end of the mirror memory range enforced by make_single_config.
Rational single_m1_bound(int n_files, const Rational& alpha);
/// The tighter (1 - alpha)^2 N bound that also appears in the source
/// description; reported only, never enforced.
Rational single_m1_bound_alt(int n_files, const Rational& alpha);

/// Smallest file size whose chunks are whole and at least
/// `min_chunk_bytes` long.
std::uint64_t single_sim_file_bytes(const SingleMirrorConfig& cfg,
                                    std::uint64_t min_chunk_bytes = 8);

/// Byte layout for file size F. Throws DivisibilityError.
ChunkLayout single_layout(const SingleMirrorConfig& cfg, std::uint64_t file_bytes);

Placement place_single(const SingleMirrorConfig& cfg, const Library& library);

/// Server: SM1/SM2 plus the uncached tail of every demanded file. Mirror:
/// relays the layer-1 symbols (as MU1/MU2) and sends each demanded layer-2
/// part whole (MU3).
TransmissionLog deliver_single(const SingleMirrorConfig& cfg, const Placement& placement,
                               const Library& library, const DemandProfile& profile);

Bytes decode_single(const SingleMirrorConfig& cfg, int user, const Placement& placement,
                    std::span<const Transmission> mirror_msgs, const DemandProfile& profile,
                    std::uint64_t file_bytes);

/// Closed forms: R1 = N(1 - alpha/K) - M1, R2 = N(1 - alpha/K).
Rational single_rate_r1(const SingleMirrorConfig& cfg);
Rational single_rate_r2(const SingleMirrorConfig& cfg);

/// Composite-rate gap between the two-layer scheme with one mirror (t = K,
/// a mirror facing min(N, K) distinct demands) and this scheme at
/// M1 = (1 - alpha)N. Throws ConstraintError if N > K with alpha != 0.
Rational dominance_gap(int users, int n_files, const Rational& alpha);

SimulationResult simulate_single(const SingleMirrorConfig& cfg, const Library& library,
                                 const std::vector<int>& demands);

}  // namespace hiercache
