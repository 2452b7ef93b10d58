#ifndef NSDWT_OP_COUNT_HPP
#define NSDWT_OP_COUNT_HPP

#include "nsdwt/scheme.hpp"

#include <array>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsdwt {

/// Operation counting rules, all per output quadruple.
///
///   mac             one operation per multiply-accumulate arrow: every
///                   polynomial term of a matrix entry, except a diagonal
///                   entry equal to 1 (the sample passes through). The
///                   pointwise gain pass is a plain multiplication, not an
///                   arrow, and is not counted.
///   mac-no-scale    same numbers as mac; the name states the gain
///                   exclusion explicitly.
///   mac-with-scale  mac plus one multiplication per non-unit gain
///                   coefficient.
enum class CountConvention { mac, mac_no_scale, mac_with_scale };

inline constexpr std::array<CountConvention, 3> all_conventions{CountConvention::mac, CountConvention::mac_no_scale,
                                                                CountConvention::mac_with_scale};

constexpr std::string_view convention_id(CountConvention c) {
  switch (c) {
    case CountConvention::mac: return "mac";
    case CountConvention::mac_no_scale: return "mac-no-scale";
    case CountConvention::mac_with_scale: return "mac-with-scale";
  }
  return "?";
}

inline CountConvention parse_convention(std::string_view id) {
  for (auto c : all_conventions)
    if (convention_id(c) == id) return c;
  throw std::invalid_argument("unknown counting convention '" + std::string(id) + "'");
}

struct PassCount {
  std::string label;
  bool barrier_before = false;
  int ops = 0;
};

struct OpCountReport {
  std::string scheme;
  std::string wavelet;
  int steps = 0;
  int ops = 0;
  std::string convention;
  std::vector<PassCount> per_pass;
};

template <Coefficient T>
int count_pass_operations(const Pass<T>& pass, CountConvention convention) {
  if (pass.role == PassRole::gain && convention != CountConvention::mac_with_scale) return 0;
  int ops = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto& p = pass.matrix.at(i, j);
      if (i == j && p.is_one()) continue;
      ops += static_cast<int>(p.size());
    }
  return ops;
}

template <Coefficient T>
OpCountReport count_operations(const Scheme<T>& scheme, CountConvention convention) {
  OpCountReport r;
  r.scheme = std::string(scheme_id(scheme.kind));
  r.wavelet = scheme.wavelet;
  r.convention = std::string(convention_id(convention));
  r.steps = scheme.steps();
  for (const auto& p : scheme.passes) {
    PassCount pc{p.matrix.label(), p.barrier_before, count_pass_operations(p, convention)};
    r.ops += pc.ops;
    r.per_pass.push_back(std::move(pc));
  }
  return r;
}

inline std::string to_string(const OpCountReport& r) {
  std::ostringstream os;
  os << "scheme " << r.scheme << ", wavelet " << r.wavelet << ", convention " << r.convention << ": steps "
     << r.steps << ", ops " << r.ops << "\n";
  for (const auto& p : r.per_pass) os << (p.barrier_before ? "  | " : "    ") << p.label << ": " << p.ops << "\n";
  return os.str();
}

/// Rows of the steps/operations table for one wavelet: one line per scheme,
/// one operations column per convention.
template <Coefficient T>
std::string format_count_table(const LiftingPlan<T>& plan) {
  std::ostringstream os;
  os << "wavelet " << plan.name << "\n";
  os << std::left << std::setw(32) << "scheme" << std::right << std::setw(6) << "steps";
  for (auto c : all_conventions) os << std::setw(16) << convention_id(c);
  os << "\n";
  for (auto kind : all_scheme_kinds) {
    const auto scheme = build_scheme(kind, plan);
    os << std::left << std::setw(32) << scheme_name(kind) << std::right << std::setw(6) << scheme.steps();
    for (auto c : all_conventions) os << std::setw(16) << count_operations(scheme, c).ops;
    os << "\n";
  }
  return os.str();
}

}  // namespace nsdwt

#endif  // NSDWT_OP_COUNT_HPP
