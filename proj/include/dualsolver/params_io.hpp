#pragma once

#include <cstdint>
#include <string>

#include "dualsolver/schedule.hpp"
#include "dualsolver/solver.hpp"

namespace dualsolver {

struct ParamsProvenance {
    std::uint64_t seed = 0;
    std::string loss_kind = "none";
    std::uint64_t iterations = 0;
};

// On-disk parameter document (format_version 1). Numbers are serialized as
// shortest round-trip decimals, so decode(encode(p)) == p bit-exactly.
// Unknown fields are rejected.
struct ParamsFile {
    int format_version = 1;
    ScheduleSpec schedule;
    SolverParams params;
    ParamsProvenance provenance;
};

std::string encode_params(const ParamsFile& file);
ParamsFile decode_params(const std::string& text);

void save_params(const ParamsFile& file, const std::string& path);
ParamsFile load_params(const std::string& path);

}  // namespace dualsolver
