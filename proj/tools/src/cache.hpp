#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <string>

#include <delone/operator.hpp>
#include <delone/step_function.hpp>

namespace delone::cli {

// Content-addressed store of counting functions under <out>/cache. Entries are
// keyed by a hash of (patch, operator, region) and carry a checksum of their
// payload; a damaged entry is recomputed and overwritten.
class SpectrumCache {
  public:
    SpectrumCache(std::filesystem::path dir, bool enabled);

    // Fingerprint of a patch and operator, prefixed to every region key.
    static std::string context(const std::string& patch_json, const std::string& operator_json);
    static std::string key(const std::string& context, const Region& q);

    StepDistribution counting(const AssembledMatrix& m, const Region& q, const std::string& context);

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    std::size_t repaired() const { return repaired_; }

  private:
    std::filesystem::path dir_;
    bool enabled_;
    mutable std::mutex mu_;
    std::size_t hits_ = 0, misses_ = 0, repaired_ = 0;
};

}  // namespace delone::cli
