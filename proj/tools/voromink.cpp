// Command-line front end: estimate Minkowski tensors of point samples via
// randomized-grid Voronoi tensors, run the direct surface estimators, query
// the analytic oracles, and generate test data.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "voromink/beta.hpp"
#include "voromink/io.hpp"
#include "voromink/lsq.hpp"
#include "voromink/oracles.hpp"
#include "voromink/spatial.hpp"
#include "voromink/surface.hpp"
#include "voromink/voronoi.hpp"

using json = nlohmann::ordered_json;
using namespace voromink;

namespace {

// exit codes: 0 ok, 2 flag error, 3 data error, 4 numerical failure
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << doc.dump(2) << '\n';
  }
}

PointCloud load_input(const std::string& path, const std::string& format,
                      std::size_t min_points) {
  PointCloud cloud = [&] {
    try {
      return load_points(path, format == "voxel-mask" ? PointFormat::VoxelMask
                                                      : PointFormat::Csv);
    } catch (const std::exception& e) {
      throw DataError(e.what());
    }
  }();
  if (cloud.size() < min_points)
    throw DataError(path + ": only " + std::to_string(cloud.size()) +
                    " points, below --min-points " +
                    std::to_string(min_points));
  return cloud;
}

Eigen::VectorXd parse_vector(const std::vector<double>& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "voromink: Minkowski tensor estimation from point samples via "
      "randomized-grid Voronoi tensors"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int renditions = 10;
  int threads = 0;
  std::string json_out;
  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--renditions", renditions, "grid renditions to average");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--json-out", json_out, "write result JSON to file");

  // ---- estimate --------------------------------------------------------
  auto* est = app.add_subcommand(
      "estimate", "least-squares Minkowski tensor estimation");
  std::string est_input, est_format = "csv", dump_series;
  int est_r = 0, est_s = 0, est_n = 50;
  double est_rmax = 0.0, est_r1 = 0.0, est_a = 0.0;
  std::vector<double> est_window;
  bool est_rotate = false;
  std::size_t min_points = 0;
  est->add_option("--input", est_input, "point file")->required();
  est->add_option("--format", est_format, "csv | voxel-mask")
      ->check(CLI::IsMember({"csv", "voxel-mask"}));
  est->add_option("--r", est_r, "position exponent r")->check(CLI::NonNegativeNumber);
  est->add_option("--s", est_s, "normal exponent s")->check(CLI::NonNegativeNumber);
  est->add_option("--n", est_n, "number of radii (default 50)");
  auto* rmax_opt = est->add_option("--rmax", est_rmax, "largest radius Rn");
  auto* window_opt = est->add_option(
      "--window", est_window,
      "observation window a1,b1,a2,b2[,a3,b3]; Rn from boundary distance");
  rmax_opt->excludes(window_opt);
  window_opt->excludes(rmax_opt);
  est->add_option("--r1", est_r1, "smallest radius (default avg NN distance)");
  est->add_option("--a", est_a, "grid spacing (default avg NN distance)");
  est->add_flag("--rotate", est_rotate, "Haar-random grid rotation");
  est->add_option("--min-points", min_points, "reject smaller inputs");
  est->add_option("--dump-voronoi-series", dump_series,
                  "also write the rendition-0 Voronoi tensor series");

  // ---- surface ---------------------------------------------------------
  auto* surf = app.add_subcommand(
      "surface", "direct surface-tensor estimation at one small radius");
  std::string surf_input, surf_format = "csv";
  int surf_r = 0, surf_s = 2;
  double surf_eps = 0.0, surf_a = 0.0;
  bool surf_rotate = false, surf_costly = false;
  surf->add_option("--input", surf_input, "point file")->required();
  surf->add_option("--format", surf_format, "csv | voxel-mask")
      ->check(CLI::IsMember({"csv", "voxel-mask"}));
  surf->add_option("--r", surf_r, "position exponent r");
  surf->add_option("--s", surf_s, "normal exponent s (default 2)");
  surf->add_option("--eps", surf_eps, "dilation radius")->required();
  surf->add_option("--a", surf_a, "grid spacing (default avg NN distance)");
  surf->add_flag("--rotate", surf_rotate, "Haar-random grid rotation");
  surf->add_flag("--i-know-this-is-slow", surf_costly,
                 "required for the s=0 difference estimator (a <= eps^2)");

  // ---- oracle ----------------------------------------------------------
  auto* orc = app.add_subcommand("oracle", "exact reference values");
  orc->require_subcommand(1);
  std::vector<double> o_sides{1, 1}, o_rho{1, 2}, o_a{1, 2}, o_b{3, 5};
  std::vector<double> o_radii;
  int o_r = 0, o_s = 0, o_k = -1, o_d = 2, o_l = 10;
  double o_beta = -0.5, o_r0 = 0.25, o_rad = 1.0;
  std::string o_body = "ball";

  auto* obox = orc->add_subcommand("box", "axis-aligned box, d in {2,3}");
  obox->add_option("--sides", o_sides, "side lengths")->required();
  obox->add_option("--r", o_r);
  obox->add_option("--s", o_s);

  auto* oshell = orc->add_subcommand("shell", "spherical shell");
  oshell->add_option("--rho", o_rho, "inner,outer radius")->required();
  oshell->add_option("--d", o_d);
  oshell->add_option("--k", o_k)->required();
  oshell->add_option("--r", o_r);
  oshell->add_option("--s", o_s);

  auto* ocut = orc->add_subcommand("cutbox", "planar box minus open box");
  ocut->add_option("--a", o_a, "inner side lengths");
  ocut->add_option("--b", o_b, "outer side lengths");
  ocut->add_option("--r", o_r);
  ocut->add_option("--s", o_s);

  auto* oround = orc->add_subcommand("rounded", "rounded rectangle");
  oround->add_option("--sides", o_sides)->required();
  oround->add_option("--r0", o_r0, "corner radius")->required();

  auto* obeta = orc->add_subcommand("beta-ev", "beta-polytope expectations");
  obeta->add_option("--d", o_d)->required();
  obeta->add_option("--l", o_l)->required();
  obeta->add_option("--beta", o_beta)->required();
  obeta->add_option("--k", o_k, "intrinsic-volume degree (default d-1)");
  obeta->add_option("--s", o_s, "tensor rank (0 = scalar expectation)");

  auto* osteiner = orc->add_subcommand("steiner", "exact neighborhood volumes");
  osteiner->add_option("--body", o_body, "ball | box")
      ->check(CLI::IsMember({"ball", "box"}));
  osteiner->add_option("--rho", o_rad, "ball radius");
  osteiner->add_option("--d", o_d, "ball dimension");
  osteiner->add_option("--sides", o_sides, "box side lengths");
  osteiner->add_option("--radii", o_radii, "evaluation radii")->required();

  // ---- sample ----------------------------------------------------------
  auto* smp = app.add_subcommand("sample", "generate test point clouds");
  smp->require_subcommand(1);
  std::string smp_out;
  double smp_spacing = 0.01;
  std::vector<double> s_sides{3, 5}, s_rho{1, 2}, s_a{1, 2}, s_b{3, 5};
  int s_d = 2, s_l = 10;
  double s_beta = -0.5;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", smp_out, "output CSV path")->required();
    c->add_option("--spacing", smp_spacing, "lattice spacing");
  };
  auto* sbox = smp->add_subcommand("box", "lattice inside a centered box");
  sbox->add_option("--sides", s_sides)->required();
  add_common(sbox);
  auto* sshell = smp->add_subcommand("shell", "lattice inside a shell");
  sshell->add_option("--rho", s_rho)->required();
  sshell->add_option("--d", s_d);
  add_common(sshell);
  auto* scut = smp->add_subcommand("cutbox", "lattice inside a cut box");
  scut->add_option("--a", s_a);
  scut->add_option("--b", s_b);
  add_common(scut);
  auto* sbeta = smp->add_subcommand(
      "beta", "lattice inside the hull of a beta-polytope sample");
  sbeta->add_option("--d", s_d);
  sbeta->add_option("--l", s_l);
  sbeta->add_option("--beta", s_beta);
  add_common(sbeta);

  // ---- heightfield -----------------------------------------------------
  auto* hf = app.add_subcommand(
      "heightfield", "surface tensor of a scanned height grid");
  std::string hf_input;
  double hf_pitch = 0.0, hf_scale = 1.0, hf_eps = 0.0, hf_a = 0.0;
  int hf_r = 0, hf_s = 2;
  hf->add_option("--input", hf_input, "rectangular grid of heights")
      ->required();
  hf->add_option("--pitch", hf_pitch, "lateral pixel pitch")->required();
  hf->add_option("--height-scale", hf_scale, "height unit scale");
  hf->add_option("--eps", hf_eps, "dilation radius (default 4 x avg NN)");
  hf->add_option("--a", hf_a, "grid spacing (default avg NN distance)");
  hf->add_option("--r", hf_r);
  hf->add_option("--s", hf_s);

  CLI11_PARSE(app, argc, argv);

  try {
    json doc;
    doc["command"] = app.get_subcommands().front()->get_name();
    doc["seed"] = seed;

    if (*est) {
      PointCloud cloud = load_input(est_input, est_format, min_points);
      RadiusSchedule sched;
      sched.n = est_n;
      sched.r1 = est_r1;
      sched.spacing = est_a;
      sched.renditions = renditions;
      sched.seed = seed;
      sched.rotate = est_rotate;
      if (!est_window.empty()) {
        if (static_cast<int>(est_window.size()) != 2 * cloud.dim())
          throw CLI::ValidationError(
              "--window", "needs 2*d values a1,b1,a2,b2[,a3,b3]");
        ObservationWindow w;
        w.lo.resize(cloud.dim());
        w.hi.resize(cloud.dim());
        for (int j = 0; j < cloud.dim(); ++j) {
          w.lo[j] = est_window[2 * j];
          w.hi[j] = est_window[2 * j + 1];
        }
        sched.rn = window_max_radius(cloud, w);
      } else {
        sched.rn = est_rmax;  // 0 -> default with warning
      }
      if (!dump_series.empty()) {
        RadiusSchedule probe = sched;  // rendition 0 only
        VoronoiSchedule vs;
        if (probe.r1 <= 0.0 || probe.spacing <= 0.0 || probe.rn <= 0.0) {
          const double av = cloud.avg_nn_distance();
          if (probe.r1 <= 0.0) probe.r1 = av;
          if (probe.spacing <= 0.0) probe.spacing = av;
          if (probe.rn <= 0.0) probe.rn = (cloud.dim() + 1) * av;
        }
        vs.radii = probe.radii();
        vs.spacing = probe.spacing;
        vs.seed = seed;
        vs.rotate = est_rotate;
        const VoronoiTensorSeries series =
            estimate_series(cloud, vs, est_r, est_s, threads);
        json sdoc;
        sdoc["radii"] = series.radii;
        sdoc["r"] = series.r;
        sdoc["s"] = series.s;
        sdoc["spacing"] = series.spacing;
        sdoc["seed"] = series.seed;
        sdoc["rotate"] = series.rotated;
        sdoc["grid_points"] = series.grid_points;
        json tensors = json::array();
        for (const auto& t : series.tensors)
          tensors.push_back(json::parse(to_json(t)));
        sdoc["tensors"] = tensors;
        emit(sdoc, dump_series);
      }
      const MinkowskiTensorSet result =
          estimate_minkowski(cloud, est_r, est_s, sched, threads);
      doc["result"] = result_document(result);
    } else if (*surf) {
      PointCloud cloud = load_input(surf_input, surf_format, 0);
      if (surf_a <= 0.0) surf_a = cloud.avg_nn_distance();
      if (surf_eps <= 0.0)
        throw CLI::ValidationError("--eps", "must be positive");
      SurfaceEstimate result;
      if (surf_s == 0) {
        if (!surf_costly)
          throw CLI::ValidationError(
              "--s",
              "the s=0 difference estimator needs a <= eps^2 and is very "
              "expensive; pass --i-know-this-is-slow to proceed");
        result = estimate_surface_scalar_diff(cloud, surf_r, surf_eps, surf_a,
                                              seed, threads, surf_rotate);
      } else {
        result = estimate_surface_tensor(cloud, surf_r, surf_s, surf_eps,
                                         surf_a, seed, threads, surf_rotate);
      }
      doc["result"] = result_document(result);
    } else if (*orc) {
      json res;
      if (*obox) {
        const MinkowskiTensorSet set =
            box_minkowski(parse_vector(o_sides), Eigen::VectorXd(), o_r, o_s);
        res = result_document(set);
      } else if (*oshell) {
        res["tensor"] = tensor_document(
            shell_minkowski(o_d, o_rho.at(0), o_rho.at(1), o_k, o_r, o_s));
      } else if (*ocut) {
        res["tensor"] = tensor_document(cut_box_surface(
            Eigen::Vector2d(o_a.at(0), o_a.at(1)),
            Eigen::Vector2d(o_b.at(0), o_b.at(1)), o_r, o_s));
      } else if (*oround) {
        const double a1 = o_sides.at(0), a2 = o_sides.at(1);
        res["phi0"] = rounded_box_2d_phi0(a1, a2, o_r0);
        res["phi1"] = rounded_box_2d_phi1(a1, a2, o_r0);
        res["phi2"] = rounded_box_2d_phi2(a1, a2, o_r0);
        res["phi1_02"] = tensor_document(rounded_box_2d_phi1_02(a1, a2, o_r0));
      } else if (*obeta) {
        const int k = o_k < 0 ? o_d - 1 : o_k;
        res["expected_v"] = beta_expected_intrinsic(o_d, k, o_l, o_beta);
        if (o_s > 0)
          res["expected_tensor"] = tensor_document(
              beta_expected_tensor(o_d, k, o_l, o_beta, o_s));
      } else if (*osteiner) {
        SteinerBody body;
        if (o_body == "ball")
          body = BallBody{o_d, o_rad};
        else
          body = BoxBody{parse_vector(o_sides)};
        res["intrinsic_volumes"] = intrinsic_volumes(body);
        res["volumes"] = steiner_voronoi_series(body, o_radii);
      }
      doc["result"] = res;
    } else if (*smp) {
      ShapeSpec shape = BoxShape{parse_vector(s_sides), Eigen::VectorXd()};
      if (*sshell) shape = ShellShape{s_d, s_rho.at(0), s_rho.at(1)};
      if (*scut)
        shape = CutBoxShape{Eigen::Vector2d(s_a.at(0), s_a.at(1)),
                            Eigen::Vector2d(s_b.at(0), s_b.at(1))};
      if (*sbeta)
        shape = PolytopeShape{sample_beta_polytope(s_d, s_l, s_beta, seed)};
      const PointCloud cloud = grid_intersect_shape(shape, smp_spacing);
      save_points_csv(smp_out, cloud);
      doc["result"] = {{"points", cloud.size()},
                       {"dim", cloud.dim()},
                       {"spacing", smp_spacing},
                       {"out", smp_out}};
    } else if (*hf) {
      const HeightField field = [&] {
        try {
          return read_heightfield(hf_input, hf_pitch, hf_scale);
        } catch (const std::exception& e) {
          throw DataError(e.what());
        }
      }();
      const PointCloud cloud = heightfield_points(field);
      double av = 0.0;
      if (hf_a <= 0.0 || hf_eps <= 0.0) av = cloud.avg_nn_distance();
      if (hf_a <= 0.0) hf_a = av;
      if (hf_eps <= 0.0) hf_eps = 4.0 * av;
      const SurfaceEstimate result = estimate_surface_tensor(
          cloud, hf_r, hf_s, hf_eps, hf_a, seed, threads);
      doc["result"] = result_document(result);
      doc["result"]["heightfield"] = {{"nx", field.nx},
                                      {"ny", field.ny},
                                      {"pitch", field.pitch},
                                      {"rms", field.rms}};
    }

    emit(doc, json_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
