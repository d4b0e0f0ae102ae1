#include <algorithm>

#include "siasp/instance.hpp"
#include "siasp/rng.hpp"

namespace siasp {

namespace {

bool coin(Rng& rng, double p) { return uniform01(rng) < p; }

Weight draw_weight(Rng& rng) {
  const double u = uniform01(rng);
  if (u < 0.80) return 1 + static_cast<Weight>(uniform_below(rng, 5));
  if (u < 0.95) return 6 + static_cast<Weight>(uniform_below(rng, 15));
  return 50 + static_cast<Weight>(uniform_below(rng, 51));
}

int draw_camera(Rng& rng, Kind kind) {
  return kind == Kind::Stereo ? kStereoCamera : 1 + static_cast<int>(uniform_below(rng, 3));
}

// Camera combinations two nearby requests cannot use together.
void add_conflicts(Rng& rng, const ImageRequest& a, const ImageRequest& b,
                   std::vector<PairConstraint>& out) {
  auto emit = [&](int ca, int cb) {
    out.push_back({CameraRef{a.id, ca}, CameraRef{b.id, cb}});
  };
  if (a.kind == Kind::Stereo && b.kind == Kind::Stereo) {
    emit(kStereoCamera, kStereoCamera);
  } else if (a.kind == Kind::Stereo || b.kind == Kind::Stereo) {
    // Stereo occupies cameras 1 and 3.
    const bool a_stereo = a.kind == Kind::Stereo;
    for (int cam : {1, 3}) {
      if (!coin(rng, 0.7)) continue;
      a_stereo ? emit(kStereoCamera, cam) : emit(cam, kStereoCamera);
    }
  } else {
    bool any = false;
    for (int cam = 1; cam <= 3; ++cam) {
      if (!coin(rng, 0.5)) continue;
      emit(cam, cam);
      any = true;
    }
    if (!any) emit(draw_camera(rng, a.kind), draw_camera(rng, b.kind));
  }
}

}  // namespace

Instance generate_instance(const GeneratorParams& params, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.name = params.name;
  inst.requests.reserve(params.n_requests);
  for (std::size_t i = 0; i < params.n_requests; ++i) {
    ImageRequest r;
    r.id = i;
    r.weight = draw_weight(rng);
    r.kind = coin(rng, params.stereo_fraction) ? Kind::Stereo : Kind::Mono;
    inst.requests.push_back(r);
  }

  // Time positions: unit spacing with jitter.
  std::vector<double> t(params.n_requests);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) + uniform01(rng);

  const std::size_t n = params.n_requests;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && t[j] - t[i] < params.conflict_window; ++j) {
      if (coin(rng, params.pair_density))
        add_conflicts(rng, inst.requests[i], inst.requests[j], inst.pairs);
      for (std::size_t k = j + 1; k < n && t[k] - t[i] < params.conflict_window; ++k) {
        if (!coin(rng, params.ternary_density)) continue;
        TernaryConstraint tc;
        tc.members = {CameraRef{inst.requests[i].id, draw_camera(rng, inst.requests[i].kind)},
                      CameraRef{inst.requests[j].id, draw_camera(rng, inst.requests[j].kind)},
                      CameraRef{inst.requests[k].id, draw_camera(rng, inst.requests[k].kind)}};
        inst.ternaries.push_back(tc);
      }
    }
  }
  canonicalize(inst);
  return inst;
}

}  // namespace siasp
