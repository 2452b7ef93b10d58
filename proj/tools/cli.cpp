#include "cli.hpp"

#include "nsdwt/bench.hpp"
#include "nsdwt/io.hpp"
#include "nsdwt/op_count.hpp"
#include "nsdwt/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace nsdwt::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string wavelet;
  std::string scheme;
  std::string precision = "double";
  std::string tile = "full";
  int threads = 1;
  std::uint64_t seed = 1;
  std::string input;
  std::string output;
  bool interleaved = false;
  int depth = 8;
  // verify
  int images = 20;
  int max_size = 256;
  bool inject_fault = false;
  // bench
  std::vector<int> sizes;
  bool quick = false;
  int reps = 5;
  std::string csv;
  std::string plot;
};

const std::vector<std::string> wavelet_ids{"cdf53", "cdf97"};
const std::vector<std::string> scheme_ids{"conv", "sep-lift", "ns-lift", "ns-lift-split"};
const std::vector<std::string> band_names{"ll", "hl", "lh", "hh"};

std::optional<std::pair<int, int>> parse_tile(const std::string& s) {
  if (s == "full") return std::pair{0, 0};
  int w = 0, h = 0;
  char x = 0, extra = 0;
  if (std::sscanf(s.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || x != 'x' || w < 1 || h < 1) return std::nullopt;
  return std::pair{w, h};
}

TileConfig tiling_of(const RunConfig& cfg) {
  const auto t = parse_tile(cfg.tile).value();
  TileConfig tc;
  tc.tile_width = t.first;
  tc.tile_height = t.second;
  tc.threads = cfg.threads;
  return tc;
}

template <typename F>
decltype(auto) with_plan(const std::string& wavelet, F&& f) {
  if (wavelet == "cdf97") return f(cdf97());
  return f(cdf53());
}

template <typename F>
decltype(auto) with_sample(const std::string& precision, F&& f) {
  if (precision == "single") return f(float{});
  return f(double{});
}

std::vector<std::string> selected_wavelets(const RunConfig& cfg) {
  return cfg.wavelet.empty() ? wavelet_ids : std::vector<std::string>{cfg.wavelet};
}

std::string band_path(const std::string& prefix, int c) { return prefix + "_" + band_names[c] + ".raw"; }

// Cancellation residue below the cross-scheme tolerance is written as zero,
// so every scheme produces the same file.
template <Sample T>
Image2D<T> flush_residue(Image2D<T> img) {
  for (auto& s : img.samples())
    if (std::abs(s) < T(1e-9)) s = T{0};
  return img;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const auto source = read_image(cfg.input);
  require_even(source);
  const std::string prefix = cfg.output.empty() ? (fs::path(cfg.input).parent_path() / fs::path(cfg.input).stem()).string()
                                                : cfg.output;
  const auto kind = parse_scheme_kind(cfg.scheme.empty() ? "ns-lift" : cfg.scheme);
  with_plan(cfg.wavelet.empty() ? "cdf53" : cfg.wavelet, [&](const auto& plan) {
    with_sample(cfg.precision, [&](auto sample) {
      using T = decltype(sample);
      const auto q = forward(convert<T>(source), build_scheme(kind, plan), tiling_of(cfg));
      if (cfg.interleaved) {
        const std::string path = prefix + "_dwt.raw";
        write_raw(path, flush_residue(interleave(q)));
        out << "wrote " << path << " (" << source.width() << "x" << source.height() << " interleaved)\n";
        return;
      }
      for (int c = 0; c < 4; ++c) {
        write_raw(band_path(prefix, c), flush_residue(q.component(c)), static_cast<RawContent>(c + 1));
        out << "wrote " << band_path(prefix, c) << " (" << q.width() << "x" << q.height() << ")\n";
      }
    });
  });
  return ok;
}

int cmd_inverse(const RunConfig& cfg, std::ostream& out) {
  SubbandQuad<float> raw;
  for (int c = 0; c < 4; ++c) {
    auto r = read_raw(band_path(cfg.input, c));
    if (r.content != static_cast<RawContent>(c + 1))
      throw IoError(band_path(cfg.input, c) + " does not hold the " + band_names[c] + " subband");
    raw.component(c) = std::move(r.image);
  }
  raw.validate();
  const std::string path = cfg.output.empty() ? cfg.input + "_inverse.raw" : cfg.output;
  const auto kind = parse_scheme_kind(cfg.scheme.empty() ? "ns-lift" : cfg.scheme);
  with_plan(cfg.wavelet.empty() ? "cdf53" : cfg.wavelet, [&](const auto& plan) {
    with_sample(cfg.precision, [&](auto sample) {
      using T = decltype(sample);
      SubbandQuad<T> q{convert<T>(raw.ll), convert<T>(raw.hl), convert<T>(raw.lh), convert<T>(raw.hh)};
      const auto img = inverse(q, build_scheme(kind, plan), tiling_of(cfg));
      if (fs::path(path).extension() == ".pgm")
        write_pgm(path, img, cfg.depth == 16 ? 65535 : 255);
      else
        write_raw(path, img);
      out << "wrote " << path << " (" << img.width() << "x" << img.height() << ")\n";
    });
  });
  return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions opt;
  opt.images = cfg.images;
  opt.max_size = cfg.max_size;
  opt.seed = cfg.seed;
  opt.tiling = tiling_of(cfg);
  opt.inject_fault = cfg.inject_fault;
  bool all_pass = true;
  for (const auto& wavelet : selected_wavelets(cfg)) {
    with_plan(wavelet, [&](const auto& plan) {
      auto checks = algebra_checks(plan);
      const auto img = with_sample(cfg.precision, [&](auto sample) { return image_checks<decltype(sample)>(plan, opt); });
      checks.insert(checks.end(), img.begin(), img.end());
      out << wavelet << ' ' << cfg.precision << ", " << opt.images << " images up to " << opt.max_size << "x"
          << opt.max_size << ", seed " << opt.seed << "\n";
      for (const auto& c : checks) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-44s max %.3e  tol %.1e  %s\n", c.name.c_str(), c.value, c.tolerance,
                      c.pass() ? "ok" : "FAIL");
        out << line;
        if (!c.pass()) {
          err << "verification failed: " << wavelet << ' ' << cfg.precision << ' ' << c.name << "\n";
          all_pass = false;
        }
      }
    });
  }
  out << (all_pass ? "all checks passed\n" : "verification FAILED\n");
  return all_pass ? ok : verification_failed;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  bool first = true;
  for (const auto& wavelet : selected_wavelets(cfg)) {
    with_plan(wavelet, [&](const auto& plan) {
      if (!first) out << "\n";
      first = false;
      out << format_count_table(plan);
      if (!cfg.scheme.empty()) {
        const auto scheme = build_scheme(parse_scheme_kind(cfg.scheme), plan);
        for (auto c : all_conventions) out << "\n" << to_string(count_operations(scheme, c));
      }
    });
  }
  return ok;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BenchOptions opt;
  opt.sizes = cfg.quick ? std::vector<int>{64, 128, 256} : cfg.sizes.empty() ? default_bench_sizes() : cfg.sizes;
  if (!cfg.scheme.empty()) opt.schemes = {parse_scheme_kind(cfg.scheme)};
  opt.precision = cfg.precision == "single" ? Precision::single : Precision::double_precision;
  opt.tiling = tiling_of(cfg);
  opt.reps = cfg.reps;
  opt.seed = cfg.seed;
  const auto records = with_plan(cfg.wavelet.empty() ? "cdf53" : cfg.wavelet, [&](const auto& plan) {
    return run_bench(plan, opt, [&](const BenchRecord& r) { err << to_csv_row(r) << "\n"; });
  });
  const std::string csv = to_csv(records);
  if (cfg.csv.empty()) {
    out << csv;
  } else {
    std::ofstream f(cfg.csv);
    if (!(f << csv)) throw IoError("cannot write " + cfg.csv);
    out << "wrote " << cfg.csv << " (" << records.size() << " rows)\n";
  }
  if (!cfg.plot.empty()) {
    std::ofstream f(cfg.plot);
    if (!(f << to_svg(records))) throw IoError("cannot write " + cfg.plot);
    out << "wrote " << cfg.plot << "\n";
  }
  return ok;
}

void add_wavelet(CLI::App* app, RunConfig& cfg, const std::string& when_absent) {
  app->add_option("--wavelet", cfg.wavelet, "Wavelet (" + when_absent + " when omitted)")
      ->check(CLI::IsMember(wavelet_ids));
}

void add_scheme(CLI::App* app, RunConfig& cfg, const std::string& when_absent) {
  app->add_option("--scheme", cfg.scheme, "Scheme (" + when_absent + " when omitted)")->check(CLI::IsMember(scheme_ids));
}

void add_engine(CLI::App* app, RunConfig& cfg) {
  app->add_option("--precision", cfg.precision, "Sample precision")
      ->check(CLI::IsMember({"single", "double"}))
      ->capture_default_str();
  app->add_option("--tile", cfg.tile, "Tile size in quadruples, WxH or full")
      ->check(CLI::Validator(
          [](std::string& s) { return parse_tile(s) ? std::string{} : "tile must be WxH with positive W, H or 'full'"; },
          "WxH"))
      ->capture_default_str();
  app->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-level 2-D discrete wavelet transform: separable and non-separable lifting schemes", "nsdwt"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* transform = app.add_subcommand("transform", "Forward transform of a PGM or raw image into four subband files");
  transform->add_option("input", cfg.input, "Input image (.pgm or raw float32)")->required();
  transform->add_option("--output", cfg.output,
                        "Output prefix; writes PREFIX_ll.raw, _hl, _lh, _hh (default: input path without extension)");
  transform->add_flag("--interleaved", cfg.interleaved, "Write one interleaved file PREFIX_dwt.raw instead");
  add_wavelet(transform, cfg, "cdf53");
  add_scheme(transform, cfg, "ns-lift");
  add_engine(transform, cfg);

  auto* inv = app.add_subcommand("inverse", "Reconstruct an image from PREFIX_ll.raw, _hl, _lh, _hh");
  inv->add_option("input", cfg.input, "Subband file prefix")->required();
  inv->add_option("--output", cfg.output, "Output image; .pgm writes PGM, anything else raw (default PREFIX_inverse.raw)");
  inv->add_option("--depth", cfg.depth, "PGM bit depth")->check(CLI::IsMember({8, 16}))->capture_default_str();
  add_wavelet(inv, cfg, "cdf53");
  add_scheme(inv, cfg, "ns-lift");
  add_engine(inv, cfg);

  auto* verify = app.add_subcommand("verify", "Cross-check all schemes on seeded random images");
  add_wavelet(verify, cfg, "both");
  add_engine(verify, cfg);
  verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  verify->add_option("--images", cfg.images, "Number of random images")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--max-size", cfg.max_size, "Largest image edge")->check(CLI::Range(8, 4096))->capture_default_str();
  verify->add_flag("--inject-fault", cfg.inject_fault)->group("");

  auto* count = app.add_subcommand("count", "Steps and arithmetic operations per quadruple for each scheme");
  add_wavelet(count, cfg, "both");
  add_scheme(count, cfg, "table only");

  auto* bench = app.add_subcommand(
      "bench", "Forward-transform throughput sweep; default sizes 64, 128, ..., 8192 square, median of the repetitions");
  add_wavelet(bench, cfg, "cdf53");
  add_scheme(bench, cfg, "all four");
  add_engine(bench, cfg);
  bench->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  auto* sizes = bench->add_option("--sizes", cfg.sizes, "Comma-separated square edge lengths")->delimiter(',');
  bench->add_flag("--quick", cfg.quick, "Sizes 64,128,256 only")->excludes(sizes);
  bench->add_option("--reps", cfg.reps, "Timed repetitions per point, after one warm-up")
      ->check(CLI::Range(5, 1000))
      ->capture_default_str();
  bench->add_option("--csv", cfg.csv, "CSV output path (default: standard output)");
  bench->add_option("--plot", cfg.plot, "SVG plot output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (transform->parsed()) return cmd_transform(cfg, out);
    if (inv->parsed()) return cmd_inverse(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (count->parsed()) return cmd_count(cfg, out);
    if (bench->parsed()) return cmd_bench(cfg, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return io_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace nsdwt::cli
