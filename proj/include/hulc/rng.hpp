#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hulc {

// splitmix64 finalizer, used to derive well-separated stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

// A named, seed-derived random stream. Every stage of the pipeline
// (budget draw, split shuffle, estimator randomness, subsampling, each
// simulation replication) gets its own stream so adding draws in one
// stage never perturbs another.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    static RngStream derive(std::uint64_t master, std::string_view tag,
                            std::uint64_t index = 0) {
        return RngStream(mix64(master ^ mix64(hash_tag(tag) + index)));
    }

    RngStream derive_sub(std::string_view tag, std::uint64_t index = 0) {
        return RngStream(mix64(gen_() ^ mix64(hash_tag(tag) + index)));
    }

    // Uniform on [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

    double normal(double mean = 0.0, double sd = 1.0) {
        return std::normal_distribution<double>(mean, sd)(gen_);
    }

    // Uniform integer in [0, bound).
    std::uint64_t integer(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(gen_);
    }

    bool bernoulli(double p) {
        return std::bernoulli_distribution(p)(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace hulc
