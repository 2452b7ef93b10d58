// Transforms a synthetic image with every scheme and prints the step
// sequence, subband energies and round-trip error of each.
#include "nsdwt/nsdwt.hpp"

#include <cmath>
#include <cstdio>

int main() {
  using namespace nsdwt;

  Image2D<double> img(128, 96);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      img.at(x, y) = 0.5 + 0.4 * std::sin(0.07 * x) * std::cos(0.11 * y) + ((x / 16 + y / 16) % 2 ? 0.05 : 0.0);

  TileConfig tiles;
  tiles.tile_width = tiles.tile_height = 16;
  tiles.threads = 4;

  const auto plan = cdf97();
  std::printf("transfer matrix entry LL<-LL has %zu terms\n\n", transfer_matrix(plan).at(ll, ll).size());

  for (auto kind : all_scheme_kinds) {
    const auto scheme = build_scheme(kind, plan);
    const auto q = forward(img, scheme, tiles);
    const auto back = inverse(q, scheme, tiles);

    std::printf("%s, %d steps\n  %s\n", std::string(scheme_name(kind)).c_str(), scheme.steps(),
                sequence_string(scheme).c_str());
    const char* names[] = {"LL", "HL", "LH", "HH"};
    for (int c = 0; c < 4; ++c) {
      double energy = 0;
      for (double v : q.component(c).samples()) energy += v * v;
      std::printf("  %s energy %.6f\n", names[c], energy);
    }
    std::printf("  round-trip error %.2e\n\n", max_abs_diff(back, img));
  }

  std::printf("%s", format_count_table(plan).c_str());
}
