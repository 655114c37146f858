#include "cache.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <delone/counting.hpp>
#include <delone/io.hpp>

namespace delone::cli {

namespace fs = std::filesystem;

SpectrumCache::SpectrumCache(fs::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

std::string SpectrumCache::context(const std::string& patch_json, const std::string& operator_json) {
    return hex64(fnv1a64(patch_json)) + hex64(fnv1a64(operator_json));
}

std::string SpectrumCache::key(const std::string& context, const Region& q) {
    return hex64(fnv1a64(context + "|" + to_json(q).dump()));
}

StepDistribution SpectrumCache::counting(const AssembledMatrix& m, const Region& q, const std::string& context) {
    if (!enabled_) return counting_function(m);
    const std::string k = key(context, q);
    const fs::path file = dir_ / (k + ".json");
    bool damaged = false;
    if (fs::exists(file)) {
        try {
            std::ifstream in(file, std::ios::binary);
            const json e = json::parse(in);
            const json& dist = e.at("distribution");
            if (e.at("key").get<std::string>() != k || e.at("sites").get<std::size_t>() != m.size() ||
                e.at("checksum").get<std::string>() != hex64(fnv1a64(dist.dump())))
                throw std::runtime_error("checksum mismatch");
            StepDistribution f = distribution_from_json(dist);
            std::lock_guard lock(mu_);
            ++hits_;
            return f;
        } catch (const std::exception& ex) {
            damaged = true;
            std::lock_guard lock(mu_);
            std::cerr << "warning: corrupt cache entry " << file.string() << " (" << ex.what()
                      << "); recomputing\n";
        }
    }
    StepDistribution f = counting_function(m);
    const json dist = to_json(f);
    const json entry = {{"key", k}, {"sites", m.size()}, {"checksum", hex64(fnv1a64(dist.dump()))}, {"distribution", dist}};
    std::lock_guard lock(mu_);
    ++misses_;
    if (damaged) ++repaired_;
    fs::create_directories(dir_);
    const fs::path tmp = dir_ / (k + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << entry.dump() << "\n";
    }
    fs::rename(tmp, file);
    return f;
}

}  // namespace delone::cli
