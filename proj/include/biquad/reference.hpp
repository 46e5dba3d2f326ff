#pragma once

// Straight single-threaded loops kept as the baseline for the OpenMP
// kernels; tests require identical results and bench_kernels times both.

#include <cstddef>
#include <cstdint>

#include "biquad/alternating.hpp"
#include "biquad/monic.hpp"

namespace biquad::reference {

SampleMinResult sample_min(const BiquadraticTensor& t, std::size_t trials, std::uint64_t seed);

GridAudit audit_grid(const GridSpec& spec);

}  // namespace biquad::reference
