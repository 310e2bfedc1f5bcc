#pragma once

#include <filesystem>
#include <iosfwd>

#include "vf/stamp/stamp.hpp"

namespace vf {

// VXG1 grid dump, little-endian:
//   "VXG1" | dims u32[3] | spacing f32 | origin f32[3]
//   | distance f32[nx*ny*nz] (x fastest) | material u16[nx*ny*nz] (0 = empty)

void write_vxg(const Stamp& stamp, std::ostream& out);
void write_vxg(const Stamp& stamp, const std::filesystem::path& path);

/// Throws IoFailure on a bad magic, short read, or invalid header.
Stamp read_vxg(std::istream& in);
Stamp read_vxg(const std::filesystem::path& path);

}  // namespace vf
