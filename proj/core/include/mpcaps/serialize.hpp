#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mpcaps {

// Little-endian fixed-width primitives. The host is assumed little-endian;
// a static check in serialize.cpp enforces it.
void write_u8(std::ostream& out, std::uint8_t v);
void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
void write_f32(std::ostream& out, float v);
void write_f64(std::ostream& out, double v);
void write_bytes(std::ostream& out, const void* p, std::size_t n);

std::uint8_t read_u8(std::istream& in);
std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
float read_f32(std::istream& in);
double read_f64(std::istream& in);
void read_bytes(std::istream& in, void* p, std::size_t n);

// Big-endian u32 for the IDX format.
std::uint32_t read_u32_be(std::istream& in);
void write_u32_be(std::ostream& out, std::uint32_t v);

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);

}  // namespace mpcaps
