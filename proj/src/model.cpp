#include "hiercache/model.hpp"

#include <algorithm>
#include <sstream>

namespace hiercache {

HierConfig validate_config(const RawConfig& raw) {
  if (raw.k1 < 1 || raw.k2 < 1) {
    throw RangeError("K1 and K2 must be at least 1");
  }
  if (raw.n_files < 1) {
    throw RangeError("N must be at least 1");
  }
  const long long users = raw.k1 * raw.k2;
  if (users > 1'000'000) {
    throw RangeError("K1*K2 too large");
  }
  if (raw.t < 1 || raw.t > users) {
    throw RangeError("t must lie in [1, K1*K2], got " + std::to_string(raw.t));
  }
  if (raw.alpha < 0 || raw.alpha > 1) {
    throw RangeError("alpha must lie in [0, 1], got " + to_fraction_string(raw.alpha));
  }
  if (raw.n_files > users && raw.alpha != 0) {
    throw ConstraintError("N > K1*K2 requires alpha = 0");
  }
  HierConfig cfg;
  cfg.k1_ = static_cast<int>(raw.k1);
  cfg.k2_ = static_cast<int>(raw.k2);
  cfg.n_files_ = static_cast<int>(raw.n_files);
  cfg.t_ = static_cast<int>(raw.t);
  cfg.alpha_ = raw.alpha;
  return cfg;
}

HierConfig HierConfig::with_alpha(const Rational& alpha) const {
  return validate_config({k1_, k2_, n_files_, t_, alpha});
}

HierConfig HierConfig::with_t(int t) const {
  return validate_config({k1_, k2_, n_files_, t, alpha_});
}

std::string to_string(const ChunkId& id) {
  std::ostringstream out;
  switch (id.layer) {
    case Layer::kOne:
      out << "W1[" << id.file + 1 << ',' << id.slot + 1 << ']';
      break;
    case Layer::kTwo: {
      out << "W2[" << id.file + 1 << ",{";
      bool first = true;
      for (int u : mask_members(id.slot)) {
        out << (first ? "" : ",") << u + 1;
        first = false;
      }
      out << "}]";
      break;
    }
    case Layer::kTwoSegment:
      out << "W2" << (id.slot == 0 ? "head" : "tail") << '[' << id.file + 1 << ']';
      break;
  }
  return out.str();
}

FilePartition make_partition(const HierConfig& cfg, std::uint64_t file_bytes) {
  if (file_bytes == 0) {
    throw RangeError("file size must be positive");
  }
  const int users = cfg.users();
  const BigInt subsets = binom(users, cfg.t());
  const Rational layer1 = cfg.alpha() * Rational(BigInt(file_bytes)) / users;
  const Rational layer2 = (1 - cfg.alpha()) * Rational(BigInt(file_bytes)) / Rational(subsets);
  if (!is_integer(layer1) || !is_integer(layer2)) {
    throw DivisibilityError("file size " + std::to_string(file_bytes) +
                            " does not split into integral chunks (alpha*F/K = " +
                            to_fraction_string(layer1) +
                            ", (1-alpha)*F/C(K,t) = " + to_fraction_string(layer2) + ")");
  }
  FilePartition p;
  p.file_bytes = file_bytes;
  p.l1_chunk_bytes = layer1.convert_to<std::uint64_t>();
  p.l2_chunk_bytes = layer2.convert_to<std::uint64_t>();
  p.users = users;
  p.l2_chunks = subsets > BigInt(std::numeric_limits<std::uint64_t>::max())
                    ? std::numeric_limits<std::uint64_t>::max()
                    : subsets.convert_to<std::uint64_t>();
  return p;
}

CodedSymbol::CodedSymbol(std::vector<ChunkId> generators, Bytes payload, Rational size_files)
    : generators_(std::move(generators)), payload_(std::move(payload)),
      size_files_(std::move(size_files)) {
  if (generators_.empty()) {
    throw std::invalid_argument("coded symbol needs at least one generator");
  }
  std::sort(generators_.begin(), generators_.end());
  if (std::adjacent_find(generators_.begin(), generators_.end()) != generators_.end()) {
    throw std::invalid_argument("coded symbol generators must be distinct");
  }
}

bool CodedSymbol::contains(const ChunkId& id) const {
  return std::binary_search(generators_.begin(), generators_.end(), id);
}

bool DemandProfile::in_base(int user) const {
  return std::binary_search(base_set.begin(), base_set.end(), user);
}

int DemandProfile::base_partner(int user) const {
  const int file = demands.at(static_cast<std::size_t>(user));
  for (int b : base_set) {
    if (demands[static_cast<std::size_t>(b)] == file) {
      return b;
    }
  }
  throw DemandError("no base-set member demands file " + std::to_string(file + 1));
}

std::vector<int> users_of_mirror(const HierConfig& cfg, int mirror) {
  if (mirror < 0 || mirror >= cfg.k1()) {
    throw RangeError("mirror index out of range");
  }
  std::vector<int> users(static_cast<std::size_t>(cfg.k2()));
  for (int j = 0; j < cfg.k2(); ++j) {
    users[static_cast<std::size_t>(j)] = mirror * cfg.k2() + j;
  }
  return users;
}

UserMask mirror_mask(const HierConfig& cfg, int mirror) {
  if (mirror < 0 || mirror >= cfg.k1()) {
    throw RangeError("mirror index out of range");
  }
  if (cfg.users() > kMaxMaskUsers) {
    throw RangeError("user masks support at most 64 users");
  }
  return range_mask(mirror * cfg.k2(), cfg.k2());
}

int mirror_of_user(const HierConfig& cfg, int user) {
  if (user < 0 || user >= cfg.users()) {
    throw RangeError("user index out of range");
  }
  return user / cfg.k2();
}

DemandProfile build_demand_profile(int k1, int k2, int n_files, bool require_surjective,
                                   const std::vector<int>& demands) {
  const int users = k1 * k2;
  if (static_cast<int>(demands.size()) != users) {
    throw DemandError("demand vector has length " + std::to_string(demands.size()) +
                      ", expected " + std::to_string(users));
  }
  for (int d : demands) {
    if (d < 0 || d >= n_files) {
      throw RangeError("demanded file index out of range");
    }
  }
  DemandProfile p;
  p.demands = demands;
  p.demanders.assign(static_cast<std::size_t>(n_files), {});
  for (int k = 0; k < users; ++k) {
    p.demanders[static_cast<std::size_t>(demands[static_cast<std::size_t>(k)])].push_back(k);
  }
  p.surjective = std::none_of(p.demanders.begin(), p.demanders.end(),
                              [](const auto& users_of_file) { return users_of_file.empty(); });
  if (require_surjective && !p.surjective) {
    throw DemandError("every file must be demanded at least once when alpha > 0");
  }
  if (p.surjective) {
    for (const auto& users_of_file : p.demanders) {
      p.base_set.push_back(users_of_file.front());
    }
    std::sort(p.base_set.begin(), p.base_set.end());
  }
  for (int m = 0; m < k1; ++m) {
    std::vector<int> files;
    for (int j = 0; j < k2; ++j) {
      files.push_back(demands[static_cast<std::size_t>(m * k2 + j)]);
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    p.per_mirror_count.push_back(static_cast<int>(files.size()));
    p.per_mirror_files.push_back(std::move(files));
  }
  return p;
}

DemandProfile build_demand_profile(const HierConfig& cfg, const std::vector<int>& demands) {
  return build_demand_profile(cfg.k1(), cfg.k2(), cfg.n_files(), cfg.has_layer1(), demands);
}

}  // namespace hiercache
