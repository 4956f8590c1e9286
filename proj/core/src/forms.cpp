#include <hecke/forms.hpp>

#include <cstdlib>

namespace hecke {

namespace {

void validate_char(const CharSpec& c) {
  if (c.d == 1) return;
  if (!is_fundamental_discriminant(c.d))
    throw Error(errc::domain_error,
                "character discriminant " + std::to_string(c.d) + " is not fundamental");
}

}  // namespace

void validate(const FormSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Level1Holomorphic>) {
          switch (s.weight) {
            case 12: case 16: case 18: case 20: case 22: case 26: return;
            default:
              throw Error(errc::domain_error,
                          "level-1 weight must be one of 12,16,18,20,22,26 (one-dimensional "
                          "cusp spaces); got " + std::to_string(s.weight));
          }
        } else if constexpr (std::is_same_v<T, Isobaric>) {
          validate_char(s.psi1);
          validate_char(s.psi2);
        } else if constexpr (std::is_same_v<T, TrivialQuadratic>) {
          if (!is_fundamental_discriminant(s.d))
            throw Error(errc::domain_error,
                        "discriminant " + std::to_string(s.d) + " is not fundamental");
        }
      },
      spec);
}

bool closed_form_at_primes(const FormSpec& spec) {
  return !std::holds_alternative<Level1Holomorphic>(spec);
}

bool has_raw_integers(const FormSpec& spec) {
  return std::holds_alternative<Level1Holomorphic>(spec) ||
         std::holds_alternative<CMGaussian>(spec);
}

bool is_ramified_prime(const FormSpec& spec, uint64_t p) {
  return std::visit(
      [p](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Level1Holomorphic>) {
          (void)s;
          return false;
        } else if constexpr (std::is_same_v<T, CMGaussian>) {
          return p == 2;
        } else if constexpr (std::is_same_v<T, Isobaric>) {
          return (!s.psi1.trivial() && s.psi1.modulus() % p == 0) ||
                 (!s.psi2.trivial() && s.psi2.modulus() % p == 0);
        } else {
          return static_cast<uint64_t>(s.d < 0 ? -s.d : s.d) % p == 0;
        }
      },
      spec);
}

std::string form_token(const FormSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Level1Holomorphic>) {
          return "level1:" + std::to_string(s.weight);
        } else if constexpr (std::is_same_v<T, CMGaussian>) {
          return "cm-gaussian";
        } else if constexpr (std::is_same_v<T, Isobaric>) {
          return "isobaric:" + std::to_string(s.psi1.d) + "," + std::to_string(s.psi2.d);
        } else {
          return "trivial-quadratic:" + std::to_string(s.d);
        }
      },
      spec);
}

FormSpec parse_form(const std::string& token) {
  auto bad = [&](const std::string& why) -> Error {
    return Error(errc::parse_error, "bad form spec '" + token + "': " + why);
  };
  auto parse_i64 = [&](const std::string& s) -> int64_t {
    if (s.empty()) throw bad("missing integer");
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) throw bad("bad integer '" + s + "'");
    return v;
  };
  FormSpec spec;
  if (token == "cm-gaussian") {
    spec = CMGaussian{};
  } else if (token.rfind("level1:", 0) == 0) {
    spec = Level1Holomorphic{static_cast<int>(parse_i64(token.substr(7)))};
  } else if (token.rfind("isobaric:", 0) == 0) {
    std::string rest = token.substr(9);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw bad("expected isobaric:<d1>,<d2>");
    spec = Isobaric{CharSpec{parse_i64(rest.substr(0, comma))},
                    CharSpec{parse_i64(rest.substr(comma + 1))}};
  } else if (token.rfind("trivial-quadratic:", 0) == 0) {
    spec = TrivialQuadratic{parse_i64(token.substr(18))};
  } else {
    throw bad("expected level1:<k>, cm-gaussian, isobaric:<d1>,<d2> or trivial-quadratic:<d>");
  }
  validate(spec);
  return spec;
}

}  // namespace hecke
