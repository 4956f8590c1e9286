#pragma once

#include <string>

#include <hecke/eigen.hpp>

namespace hecke {

// Binary eigenvalue cache. Layout (all integers little-endian):
//   8-byte magic "HKEIGTBL", u32 version,
//   u32 form-token length, token bytes,
//   u64 n_max, u64 raw_len, raw_len int64 values,
//   u64 lambda count, that many doubles,
//   u64 FNV-1a checksum of every payload byte after the magic.
// Readers reject a bad magic, an unknown version, or a checksum mismatch.
void save_table(const EigenTable& table, const std::string& path);
EigenTable load_table(const std::string& path);  // throws errc::io_error

// Cache-directory convention used by the CLI:
// <dir>/<form-token with ':' -> '_'>-<n_max>.eig
std::string cache_file_name(const FormSpec& spec, uint64_t n_max);

}  // namespace hecke
