// Library walkthrough: build the Sierpinski gasket IFS directly, solve the
// Moran equation, bound the attractor diameter, and verify an open-set
// certificate.

#include <cstdio>

#include "fractaldim/fractaldim.hpp"

using namespace fractaldim;

int main() {
  Mat id = Mat::identity(2);
  Ifs ifs({
      Similarity(0.5, id, {0.0, 0.0}),
      Similarity(0.5, id, {0.5, 0.0}),
      Similarity(0.5, id, {0.25, 0.5}),
  });

  MoranSolution moran = moran_exponent(ifs.ratios());
  std::printf("moran exponent   %.15g (%s, residual %.3g)\n", moran.s,
              to_string(moran.method), moran.residual);

  DiameterBound diam = diameter_interval(ifs, 7);
  std::printf("diameter         [%.12g, %.12g]\n", diam.interval.lo,
              diam.interval.hi);

  Level lvl = level(ifs, 2);
  std::printf("level 2          %zu elements, sup relative diameter %.6g\n",
              lvl.elements.size(), lvl.elements.front().relative_diameter());

  ConvexPolygon triangle({{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}});
  CertificateVerdict verdict = verify_certificate(ifs, triangle);
  std::printf("certificate      %s (containment margin %.6g)\n",
              verdict.holds ? "holds" : "violated",
              verdict.min_containment_margin);

  PointCloud cloud = chaos_game(ifs, 200000, 1);
  auto est = box_dimension_estimate(cloud, default_scales(ifs.c_max(),
                                                          diam.interval.mid()));
  std::printf("box estimate     %.4f +/- %.4f\n", est.grid.slope,
              est.grid.stderr_slope);
  return 0;
}
