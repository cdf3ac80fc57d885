// Command-line front end: one subcommand per pipeline stage plus the full
// pipeline and the batch harness.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "encmap/analysis.hpp"
#include "encmap/error.hpp"
#include "encmap/io.hpp"
#include "encmap/pipeline.hpp"
#include "encmap/plot.hpp"
#include "encmap/scenario.hpp"

namespace fs = std::filesystem;
using namespace encmap;

namespace {

struct Common {
  std::string scenario;
  std::string out = ".";
  std::optional<std::uint64_t> seed;

  Scenario load() const {
    Scenario s = scenario.empty() ? Scenario{} : load_scenario(scenario);
    if (seed) s.set_seed(*seed);
    s.validate();
    return s;
  }
};

void add_common(CLI::App* app, Common& c, const char* out_help = "output directory") {
  app->add_option("-c,--config", c.scenario, "scenario file (YAML)");
  app->add_option("-o,--out", c.out, out_help);
  app->add_option("--seed", c.seed, "overrides simulation and subsampling seeds");
}

void print_timings(const Timings& t, const std::string& path) {
  std::string s;
  for (const auto& [name, sec] : t) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s,%.6f\n", name.c_str(), sec);
    s += buf;
  }
  if (path.empty()) {
    std::cerr << "stage timings (s):\n" << s;
  } else {
    io::write_text(path, "stage,seconds\n" + s);
  }
}

// Largest component of a matrix read from disk, with a warning when some
// points had to go.
DistanceMatrix finite_part(const DistanceMatrix& d, IndexList* kept) {
  const IndexList comp = largest_component(d);
  if (kept) *kept = comp;
  if (comp.size() == d.size()) return d;
  std::cerr << "warning: distance matrix is disconnected; using the largest component ("
            << comp.size() << " of " << d.size() << " points)\n";
  return restrict(d, comp);
}

DistanceMatrix landmark_matrix(const std::string& dist, const std::string& landmarks) {
  const DistanceMatrix d = io::read_distances(dist);
  if (landmarks.empty()) return finite_part(d, nullptr);
  return restrict(d, io::read_landmarks(landmarks));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinate-free mapping from swarm encounter logs"};
  app.require_subcommand(1);

  Common c;
  std::string input, status_file, landmarks_file, classifier_file, kind, timings_file;
  std::string method, mode;
  std::optional<std::size_t> n_landmarks, k;
  std::optional<double> q, omega, eps_max;
  std::optional<int> beta, runs, dim_out;
  std::optional<std::uint64_t> seed_base;
  int dim = 1;
  bool traj = false;

  auto* sim = app.add_subcommand("simulate", "run the swarm and write status.csv");
  add_common(sim, c);
  sim->add_flag("--traj", traj, "also write traj.csv");

  auto* ev = app.add_subcommand("events", "detect encounters in traj.csv");
  add_common(ev, c);
  ev->add_option("-i,--input", input, "traj.csv")->required();

  auto* met = app.add_subcommand("metric", "encounter metric from events.csv");
  add_common(met, c);
  met->add_option("-i,--input", input, "events.csv")->required();
  met->add_option("--status", status_file, "status.csv (needed for contracted and hybrid)");
  met->add_option("--mode", mode, "plain | contracted | hybrid");

  auto* sub = app.add_subcommand("subsample", "select landmarks from dist.csv");
  add_common(sub, c);
  sub->add_option("-i,--input", input, "dist.csv")->required();
  sub->add_option("-n", n_landmarks, "number of landmarks");
  sub->add_option("-k", k, "neighbours for the density estimate");
  sub->add_option("-q", q, "quantile of the KNN filter");
  sub->add_option("--omega", omega, "density weight of prob-maxmin");
  sub->add_option("--method", method, "maxmin | knn-maxmin | prob-maxmin");

  auto* per = app.add_subcommand("persist", "persistence diagram of a distance matrix");
  add_common(per, c);
  per->add_option("-i,--input", input, "dist.csv")->required();
  per->add_option("--landmarks", landmarks_file, "landmarks.csv restricting the matrix");
  per->add_option("--eps-max", eps_max, "largest filtration value");

  auto* sn = app.add_subcommand("snr", "signal-to-noise ratio of a diagram");
  add_common(sn, c);
  sn->add_option("-i,--input", input, "dgm.csv")->required();
  sn->add_option("--beta", beta, "true Betti number (default: from the scenario)");
  sn->add_option("--dim", dim, "homology dimension")->check(CLI::Range(0, 1));

  auto* tr = app.add_subcommand("train", "train the Betti classifier on a batch of runs");
  add_common(tr, c);
  tr->add_option("--runs", runs, "number of runs");
  tr->add_option("--seed-base", seed_base, "seed of the first run");

  auto* cl = app.add_subcommand("classify", "estimated Betti number of a diagram");
  add_common(cl, c);
  cl->add_option("-i,--input", input, "dgm.csv")->required();
  cl->add_option("--classifier", classifier_file, "classifier.csv (default: scenario values)");
  cl->add_option("--dim", dim, "homology dimension")->check(CLI::Range(0, 1));
  cl->add_option("--eps-max", eps_max, "censoring scale (default: largest finite death)");

  auto* em = app.add_subcommand("embed", "classical MDS of a distance matrix");
  add_common(em, c);
  em->add_option("-i,--input", input, "dist.csv")->required();
  em->add_option("--landmarks", landmarks_file, "landmarks.csv restricting the matrix");
  em->add_option("--dim", dim_out, "2 or 3")->check(CLI::IsMember({2, 3}));

  auto* pl = app.add_subcommand("plot", "SVG of a diagram, embedding or SNR table");
  add_common(pl, c, "output SVG file");
  pl->add_option("-i,--input", input, "artifact")->required();
  pl->add_option("--kind", kind, "diagram | embedding | snr")->required();

  auto* pipe = app.add_subcommand("pipeline", "all stages, writing every artifact");
  add_common(pipe, c);
  pipe->add_option("--timings", timings_file, "write stage timings here instead of stderr");

  auto* bat = app.add_subcommand("batch", "many seeded runs with aggregation");
  add_common(bat, c);
  bat->add_option("--runs", runs, "number of runs");
  bat->add_option("--seed-base", seed_base, "seed of the first run");
  bat->add_option("--mode", mode, "snr | train | evaluate");
  bat->add_option("--classifier", classifier_file, "classifier.csv for evaluate mode");
  std::optional<int> holes;
  bat->add_option("--holes", holes, "hole count of the random layout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kConfig);
  }

  try {
    const fs::path out(c.out);
    if (sim->parsed()) {
      Scenario s = c.load();
      const SimResult r = simulate(s.sim, s.mobility, s.env, s.r_d);
      io::write_status(out / "status.csv", r.status);
      if (traj || s.write_trajectory) io::write_trajectory(out / "traj.csv", r.trajectory);
    } else if (ev->parsed()) {
      const Scenario s = c.load();
      io::write_events(out / "events.csv", detect_events(io::read_trajectory(input), s.r_d));
    } else if (met->parsed()) {
      Scenario s = c.load();
      if (!mode.empty()) s.metric_mode = parse_metric_mode(mode);
      StopIntervals stops;
      if (!status_file.empty()) {
        stops = stop_intervals(io::read_status(status_file));
      } else if (s.metric_mode != MetricMode::kPlain) {
        throw ConfigError("metric: --status is required for contracted and hybrid modes");
      }
      StaticSet statics;
      for (AgentId a = 0; a < s.sim.n_static(); ++a) statics.insert(a);
      const auto events = io::read_events(input);
      io::write_distances(out / "dist.csv",
                          shortest_path_metric(build_chain_graph(events, s.metric_mode, stops, statics)));
    } else if (sub->parsed()) {
      Scenario s = c.load();
      SubsampleParams p = s.subsample;
      if (n_landmarks) p.m = *n_landmarks;
      if (k) p.k = *k;
      if (q) p.q = *q;
      if (omega) p.omega = *omega;
      if (!method.empty()) p.method = parse_subsample_method(method);
      IndexList kept;
      const DistanceMatrix d = finite_part(io::read_distances(input), &kept);
      IndexList idx = select_landmarks(d, p);
      for (std::size_t& i : idx) i = kept[i];
      io::write_landmarks(out / "landmarks.csv", idx);
    } else if (per->parsed()) {
      const Scenario s = c.load();
      const DistanceMatrix d = landmark_matrix(input, landmarks_file);
      const double e = eps_max ? *eps_max : s.eps_max ? *s.eps_max : d.max_finite();
      PersistenceDiagram dgm;
      if (e > 0.0) {
        dgm = persistence_cohomology(d, e);
      } else {
        dgm.points = {{0, 0.0, kInf}};
      }
      io::write_diagram(out / "dgm.csv", dgm);
    } else if (sn->parsed()) {
      const Scenario s = c.load();
      const int b = beta ? *beta : (dim == 0 ? betti_ground_truth(s.env).first
                                             : betti_ground_truth(s.env).second);
      const SnrResult r = snr(interval_lengths(io::read_diagram(input), dim, kInf), b);
      std::cout << io::format_value(r.value) << (r.signal_truncated ? " (signal truncated)" : "")
                << "\n";
    } else if (tr->parsed()) {
      Scenario s = c.load();
      s.batch.mode = BatchMode::kTrain;
      if (runs) s.batch.n_runs = *runs;
      if (seed_base) s.batch.seed_base = *seed_base;
      const BatchResult r = run_batch(s, out, &std::cerr);
      std::cout << "theta q=" << r.theta.q << " delta=" << r.theta.delta << " tau=" << r.theta.tau
                << " cost=" << r.training->cost << " failed=" << r.failed << "\n";
    } else if (cl->parsed()) {
      const Scenario s = c.load();
      const ClassifierParams theta =
          classifier_file.empty() ? s.classifier : io::read_classifier(classifier_file).theta;
      const PersistenceDiagram dgm = io::read_diagram(input);
      double e = 0.0;
      for (const PersistencePoint& p : dgm.points) {
        if (std::isfinite(p.death)) e = std::max(e, p.death);
      }
      std::cout << classify(dgm, dim, theta, eps_max ? *eps_max : e) << "\n";
    } else if (em->parsed()) {
      const Scenario s = c.load();
      const Embedding e = mds_embed(landmark_matrix(input, landmarks_file), dim_out ? *dim_out : s.embed_dim);
      if (e.degenerate) std::cerr << "warning: too few points for the embedding; zero-padded\n";
      io::write_embedding(out / "embedding.csv", e);
    } else if (pl->parsed()) {
      plot(input, parse_plot_kind(kind), c.out == "." ? fs::path(input).replace_extension(".svg") : out);
    } else if (pipe->parsed()) {
      const PipelineResult r = run_pipeline(c.load(), out);
      for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "betti_hat " << r.betti_hat.first << " " << r.betti_hat.second << "  snr "
                << io::format_value(r.snr.value) << "\n";
      print_timings(r.timings, timings_file);
    } else if (bat->parsed()) {
      Scenario s = c.load();
      if (runs) s.batch.n_runs = *runs;
      if (seed_base) s.batch.seed_base = *seed_base;
      if (!mode.empty()) s.batch.mode = parse_batch_mode(mode);
      if (!classifier_file.empty()) s.classifier = io::read_classifier(classifier_file).theta;
      if (holes) {
        if (!s.batch.layout) throw ConfigError("--holes needs a batch.layout in the scenario");
        s.batch.layout->n_holes = *holes;
        s.validate();
      }
      const BatchResult r = run_batch(s, out, &std::cerr);
      for (const MethodAggregate& a : r.methods) {
        std::cout << subsample_method_name(a.method) << " mean_snr " << io::format_value(a.mean_snr)
                  << " finite_mean " << io::format_value(a.mean_finite_snr) << " inf " << a.infinite
                  << "\n";
      }
      std::cout << "sensitivity " << io::format_value(r.sensitivity) << " failed " << r.failed << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kIo);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kRuntime);
  }
  return 0;
}
