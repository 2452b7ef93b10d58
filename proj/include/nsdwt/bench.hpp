#ifndef NSDWT_BENCH_HPP
#define NSDWT_BENCH_HPP

#include "nsdwt/engine.hpp"
#include "nsdwt/lifting_plan.hpp"
#include "nsdwt/scheme.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsdwt {

struct BenchRecord {
  std::string wavelet;
  std::string scheme;
  int width = 0;
  int height = 0;
  Precision precision = Precision::double_precision;
  int threads = 1;
  std::string tile = "full";
  int reps = 0;
  double median_seconds = 0;
  double gbps = 0;
};

inline constexpr const char* csv_header = "wavelet,scheme,width,height,precision,threads,tile,reps,median_seconds,gbps";

struct BenchOptions {
  std::vector<int> sizes;  // square edge lengths
  std::vector<SchemeKind> schemes{all_scheme_kinds.begin(), all_scheme_kinds.end()};
  Precision precision = Precision::double_precision;
  TileConfig tiling;
  int reps = 5;
  int warmup = 1;
  std::uint64_t seed = 1;
};

/// 2^6 .. 2^13
inline std::vector<int> default_bench_sizes() {
  std::vector<int> s;
  for (int e = 6; e <= 13; ++e) s.push_back(1 << e);
  return s;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::string tile_label(const TileConfig& cfg) {
  if (cfg.tile_width == 0 && cfg.tile_height == 0) return "full";
  return std::to_string(cfg.tile_width) + "x" + std::to_string(cfg.tile_height);
}

template <Sample T>
Image2D<T> seeded_image(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  Image2D<T> img(width, height);
  for (auto& s : img.samples()) s = static_cast<T>(d(rng));
  return img;
}

namespace detail {

template <Sample T, Coefficient C>
std::vector<BenchRecord> bench_precision(const LiftingPlan<C>& plan, const BenchOptions& opt,
                                         const std::function<void(const BenchRecord&)>& progress) {
  std::vector<BenchRecord> out;
  for (int size : opt.sizes) {
    const auto image = seeded_image<T>(size, size, opt.seed + static_cast<std::uint64_t>(size));
    for (auto kind : opt.schemes) {
      const auto prog = compile(build_scheme(kind, plan));
      configure(opt.tiling, prog, size, size);
      for (int w = 0; w < opt.warmup; ++w) run_tiled(prog, image, opt.tiling);
      std::vector<double> times;
      for (int r = 0; r < opt.reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto q = run_tiled(prog, image, opt.tiling);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      BenchRecord rec;
      rec.wavelet = plan.name;
      rec.scheme = std::string(scheme_id(kind));
      rec.width = rec.height = size;
      rec.precision = precision_of<T>();
      rec.threads = opt.tiling.threads;
      rec.tile = tile_label(opt.tiling);
      rec.reps = opt.reps;
      rec.median_seconds = median(times);
      const double bytes = static_cast<double>(size) * size * sizeof(T);
      rec.gbps = bytes / rec.median_seconds / 1e9;
      if (progress) progress(rec);
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace detail

/// Times the forward transform only; the warm-up runs are not recorded.
template <Coefficient C>
std::vector<BenchRecord> run_bench(const LiftingPlan<C>& plan, const BenchOptions& opt,
                                   const std::function<void(const BenchRecord&)>& progress = {}) {
  if (opt.reps < 5) throw std::invalid_argument("at least 5 repetitions are required");
  if (opt.warmup < 0) throw std::invalid_argument("warm-up count must not be negative");
  for (int s : opt.sizes)
    if (s < 2 || s % 2) throw std::invalid_argument("bench sizes must be even and at least 2 (got " + std::to_string(s) + ")");
  if (opt.precision == Precision::single) return detail::bench_precision<float>(plan, opt, progress);
  return detail::bench_precision<double>(plan, opt, progress);
}

inline std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << r.wavelet << ',' << r.scheme << ',' << r.width << ',' << r.height << ',' << precision_name(r.precision) << ','
     << r.threads << ',' << r.tile << ',' << r.reps << ',' << std::setprecision(9) << r.median_seconds << ','
     << std::setprecision(6) << r.gbps;
  return os.str();
}

inline std::string to_csv(const std::vector<BenchRecord>& records) {
  std::string out = std::string(csv_header) + "\n";
  for (const auto& r : records) out += to_csv_row(r) + "\n";
  return out;
}

/// Standalone SVG: GB/s against image edge length (log2 axis), one polyline
/// per scheme.
inline std::string to_svg(const std::vector<BenchRecord>& records) {
  constexpr double W = 760, H = 480, left = 70, right = 190, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;

  std::map<std::string, std::vector<const BenchRecord*>> series;
  std::vector<std::string> order;
  double xmin = 1e300, xmax = -1e300, ymax = 0;
  for (const auto& r : records) {
    if (!series.count(r.scheme)) order.push_back(r.scheme);
    series[r.scheme].push_back(&r);
    const double x = std::log2(static_cast<double>(r.width));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymax = std::max(ymax, r.gbps);
  }
  if (records.empty()) xmin = 0, xmax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax <= 0) ymax = 1;
  // Round the y range up to a 1-2-5 step.
  const double mag = std::pow(10.0, std::floor(std::log10(ymax)));
  double step = mag;
  for (double f : {0.1, 0.2, 0.5, 1.0})
    if (ymax / (f * mag) <= 6) {
      step = f * mag;
      break;
    }
  const double ytop = std::ceil(ymax / step) * step;

  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + ph - y / ytop * ph; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string title = records.empty() ? "" : records.front().wavelet + " " + precision_name(records.front().precision);
  os << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">Forward transform throughput "
     << title << "</text>\n";
  os << "<g stroke=\"#888\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e)
    os << "<text x=\"" << px(e) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << (1 << e) << "</text>\n";
  for (double y = 0; y <= ytop * (1 + 1e-9); y += step)
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << std::setprecision(3)
       << y << "</text>\n"
       << std::setprecision(2);
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">image width = height (pixels)</text>\n";
  os << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">GB/s</text>\n";
  os << "</g>\n";
  for (std::size_t s = 0; s < order.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    os << "<polyline data-scheme=\"" << order[s] << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto* r : series[order[s]]) {
      os << (first ? "" : " ") << px(std::log2(static_cast<double>(r->width))) << ',' << py(r->gbps);
      first = false;
    }
    os << "\"/>\n";
    const double ly = top + 20 + 22 * static_cast<double>(s);
    os << "<line x1=\"" << left + pw + 20 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 50 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 56 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << order[s] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nsdwt

#endif  // NSDWT_BENCH_HPP
