#ifndef LPA_PERSISTENCE_HPP
#define LPA_PERSISTENCE_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "lpa/network.hpp"
#include "lpa/training.hpp"

namespace lpa {

inline constexpr int kCheckpointVersion = 1;

struct CheckpointMeta {
  Paradigm paradigm = Paradigm::LPA;
  std::uint64_t seed = 0;
  std::size_t epochs_completed = 0;
};

/// Writes a `.lpanet` checkpoint: a line-oriented text header (version,
/// dims, metadata, payload length) terminated by END_HEADER, followed by
/// all parameters as little-endian 64-bit floats in canonical tensor order.
void save_checkpoint(const ResidualNetwork& net, const CheckpointMeta& meta,
                     const std::string& path);

/// Round-trips save_checkpoint bit-exactly. Rejects unknown versions before
/// reading any payload, truncated payloads, and non-finite parameters.
std::pair<ResidualNetwork, CheckpointMeta> load_checkpoint(
    const std::string& path);

/// Everything needed to run one surface-fitting experiment.
struct RunConfig {
  Surface surface = Surface::LocalizedStripes;
  NetworkDims dims;  // d_in=2, d_y=1 fixed by the task
  TrainConfig train;
  std::size_t n_train = 10000;
  std::size_t n_test = 10000;
  Domain domain;
};

/// Parses `key = value` config text. Required keys: surface, paradigm.
/// Optional keys (with defaults): epochs 300, batch_size 128, lr 1e-3,
/// seed 0, lambda default weighting, d 30, hidden 30, blocks 6,
/// n_train/n_test 10000, domain -1,1,-1,1, adam_beta1/beta2/eps.
/// Unknown keys and type mismatches are rejected by name.
RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text,
                                const std::string& origin = "<config>");

}  // namespace lpa

#endif  // LPA_PERSISTENCE_HPP
