#include "vf/stamp/vxg_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "vf/geometry/errors.hpp"

namespace vf {

namespace {

constexpr char kMagic[4] = {'V', 'X', 'G', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

void put_f32(std::ostream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw IoFailure("VXG1: truncated stream");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

float get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

}  // namespace

void write_vxg(const Stamp& stamp, std::ostream& out) {
  const GridSpec& spec = stamp.spec();
  out.write(kMagic, 4);
  for (int d : spec.dims) put_u32(out, static_cast<std::uint32_t>(d));
  put_f32(out, static_cast<float>(spec.spacing));
  put_f32(out, static_cast<float>(spec.origin.x));
  put_f32(out, static_cast<float>(spec.origin.y));
  put_f32(out, static_cast<float>(spec.origin.z));
  const auto dist = stamp.distance();
  const auto mat = stamp.material();
  std::vector<char> buffer(dist.size() * 4 + mat.size() * 2);
  std::size_t at = 0;
  for (float d : dist) {
    const std::uint32_t v = std::bit_cast<std::uint32_t>(d);
    for (int b = 0; b < 4; ++b) buffer[at++] = static_cast<char>((v >> (8 * b)) & 0xff);
  }
  for (MaterialId m : mat) {
    buffer[at++] = static_cast<char>(m & 0xff);
    buffer[at++] = static_cast<char>((m >> 8) & 0xff);
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw IoFailure("VXG1: write failed");
}

void write_vxg(const Stamp& stamp, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  write_vxg(stamp, out);
}

Stamp read_vxg(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw IoFailure("VXG1: bad magic");
  GridSpec spec;
  for (int& d : spec.dims) d = static_cast<int>(get_u32(in));
  spec.spacing = get_f32(in);
  spec.origin.x = get_f32(in);
  spec.origin.y = get_f32(in);
  spec.origin.z = get_f32(in);
  Stamp stamp = [&] {
    try {
      return Stamp(spec);
    } catch (const std::exception& e) {
      throw IoFailure(std::string("VXG1: invalid header: ") + e.what());
    }
  }();
  const auto dist = stamp.distance();
  const auto mat = stamp.material();
  std::vector<unsigned char> buffer(dist.size() * 4 + mat.size() * 2);
  if (!in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size())))
    throw IoFailure("VXG1: truncated stream");
  std::size_t at = 0;
  for (float& d : dist) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(buffer[at++]) << (8 * b);
    d = std::bit_cast<float>(v);
  }
  for (MaterialId& m : mat) {
    m = static_cast<MaterialId>(buffer[at] | (buffer[at + 1] << 8));
    at += 2;
  }
  return stamp;
}

Stamp read_vxg(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  return read_vxg(in);
}

}  // namespace vf
