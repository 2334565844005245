#pragma once

#include <cstdint>

#include "wsdbench/corpus.hpp"

namespace wsd {

/// Five two-sense tasks with a 65/35 sense skew, so the majority baseline
/// lands at exactly 0.65 while sense-indicator words near each head keep the
/// tasks linearly separable.
struct SynthConfig {
    uint64_t seed = 7;
    size_t train_major = 130;
    size_t train_minor = 70;
    size_t test_major = 65;
    size_t test_minor = 35;
};

struct SynthCorpora {
    Corpus train;
    Corpus test;
};

SynthCorpora make_synthetic(const SynthConfig& config = {});

} // namespace wsd
