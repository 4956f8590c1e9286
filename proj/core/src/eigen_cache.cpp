#include <hecke/eigen_cache.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace hecke {

namespace {

constexpr char kMagic[8] = {'H', 'K', 'E', 'I', 'G', 'T', 'B', 'L'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "cache format is little-endian; byte-swapping writers are not implemented");

uint64_t fnv1a(const unsigned char* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
  for (size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Hasher {
  uint64_t h = 0xcbf29ce484222325ULL;
  void feed(const void* p, size_t len) {
    h = fnv1a(static_cast<const unsigned char*>(p), len, h);
  }
};

}  // namespace

void save_table(const EigenTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
  Hasher hash;
  auto put = [&](const void* p, size_t len) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
    hash.feed(p, len);
  };
  out.write(kMagic, sizeof kMagic);
  std::string token = form_token(table.spec);
  uint32_t ver = kVersion;
  put(&ver, sizeof ver);
  uint32_t tlen = static_cast<uint32_t>(token.size());
  put(&tlen, sizeof tlen);
  put(token.data(), token.size());
  uint64_t n_max = table.n_max;
  put(&n_max, sizeof n_max);
  uint64_t raw_len = table.raw_len;
  put(&raw_len, sizeof raw_len);
  if (raw_len > 0) put(table.raw.data() + 1, raw_len * sizeof(int64_t));
  uint64_t lam_count = table.lambda.size() > 0 ? table.n_max : 0;
  put(&lam_count, sizeof lam_count);
  if (lam_count > 0) put(table.lambda.data() + 1, lam_count * sizeof(double));
  out.write(reinterpret_cast<const char*>(&hash.h), sizeof hash.h);
  if (!out) throw Error(errc::io_error, "write failed: " + path);
}

EigenTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw Error(errc::io_error, "bad magic in " + path);
  Hasher hash;
  auto get = [&](void* p, size_t len) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
    if (!in) throw Error(errc::io_error, "truncated cache file " + path);
    hash.feed(p, len);
  };
  uint32_t ver = 0;
  get(&ver, sizeof ver);
  if (ver != kVersion)
    throw Error(errc::io_error, "unsupported cache version " + std::to_string(ver));
  uint32_t tlen = 0;
  get(&tlen, sizeof tlen);
  if (tlen > 4096) throw Error(errc::io_error, "corrupt token length");
  std::string token(tlen, '\0');
  get(token.data(), tlen);
  EigenTable t;
  t.spec = parse_form(token);
  get(&t.n_max, sizeof t.n_max);
  get(&t.raw_len, sizeof t.raw_len);
  if (t.raw_len > t.n_max) throw Error(errc::io_error, "corrupt raw length");
  t.raw.assign(t.raw_len + 1, 0);
  if (t.raw_len > 0) get(t.raw.data() + 1, t.raw_len * sizeof(int64_t));
  uint64_t lam_count = 0;
  get(&lam_count, sizeof lam_count);
  if (lam_count != t.n_max) throw Error(errc::io_error, "corrupt lambda length");
  t.lambda.assign(t.n_max + 1, 0.0);
  get(t.lambda.data() + 1, lam_count * sizeof(double));
  uint64_t stored = 0;
  in.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (!in || stored != hash.h)
    throw Error(errc::io_error, "checksum mismatch in " + path);
  return t;
}

std::string cache_file_name(const FormSpec& spec, uint64_t n_max) {
  std::string token = form_token(spec);
  for (auto& c : token)
    if (c == ':' || c == ',') c = '_';
  return token + "-" + std::to_string(n_max) + ".eig";
}

}  // namespace hecke
