#include "encmap/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "encmap/error.hpp"
#include "encmap/io.hpp"
#include "encmap/rng.hpp"

namespace encmap {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Runs one stage, timing it and prefixing any error with the stage name
// while keeping the error category (and so the exit status).
template <typename F>
auto stage(const char* name, Timings* timings, F&& fn) {
  const auto t0 = Clock::now();
  auto record = [&] {
    if (timings) {
      timings->emplace_back(name, std::chrono::duration<double>(Clock::now() - t0).count());
    }
  };
  const std::string tag = std::string("[") + name + "] ";
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record();
    } else {
      auto out = fn();
      record();
      return out;
    }
  } catch (const ConfigError& e) {
    throw ConfigError(tag + e.what());
  } catch (const IoError& e) {
    throw IoError(tag + e.what());
  } catch (const std::exception& e) {
    throw Error(tag + e.what());
  }
}

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json top_lengths(const std::vector<double>& desc, std::size_t k) {
  Json a = Json::array();
  for (std::size_t i = 0; i < std::min(k, desc.size()); ++i) a.push_back(desc[i]);
  return a;
}

Json summary_json(const Scenario& s, const PipelineResult& r) {
  Json j;
  j["scenario"] = {
      {"n_agents", s.sim.n_agents},
      {"t_f_s", s.sim.t_f},
      {"seed", s.sim.seed},
      {"metric", std::string(metric_mode_name(s.metric_mode))},
      {"subsample", std::string(subsample_method_name(s.subsample.method))},
      {"n_landmarks_requested", s.subsample.m},
  };
  j["status_records"] = r.cloud.sim.status.size();
  j["events"] = r.cloud.events.size();
  j["components"] = {
      {"count", r.cloud.n_components},
      {"largest", r.cloud.component.size()},
      {"discarded_fraction", r.cloud.discarded_fraction},
  };
  j["landmarks"] = r.topo.landmarks.size();
  j["eps_max_s"] = r.topo.eps_max;
  j["betti_true"] = {r.betti_true.first, r.betti_true.second};
  j["betti_hat"] = {r.betti_hat.first, r.betti_hat.second};
  j["classifier"] = {{"q", s.classifier.q}, {"delta_s", s.classifier.delta}, {"tau", s.classifier.tau}};
  j["snr"] = number(r.snr.value);
  j["snr_signal_truncated"] = r.snr.signal_truncated;
  j["dominant_gap_ratio"] = number(r.gap_ratio);
  j["dim1_longest_s"] = top_lengths(r.topo.lengths1, 5);
  j["dim1_intervals"] = r.topo.lengths1.size();
  j["warnings"] = r.warnings;
  return j;
}

double safe_mean(double sum, int n) { return n > 0 ? sum / n : 0.0; }

}  // namespace

CloudResult build_cloud(const Scenario& s, const Environment& env, Timings* timings) {
  CloudResult c;
  c.sim = stage("simulate", timings, [&] { return simulate(s.sim, s.mobility, env, s.r_d); });
  c.events = stage("events", timings, [&] { return detect_events(c.sim.trajectory, s.r_d); });
  if (c.events.empty()) throw Error("[events] no encounters were detected");

  stage("metric", timings, [&] {
    const StaticSet statics(c.sim.static_agents.begin(), c.sim.static_agents.end());
    const EncounterGraph g =
        build_chain_graph(c.events, s.metric_mode, stop_intervals(c.sim.status), statics);
    c.dist = shortest_path_metric(g);
    c.dgm0_full = graph_dim0_diagram(g.vertices.size(), g.edges);
    component_labels(c.dist, &c.n_components);
    c.component = largest_component(c.dist);
    c.discarded_fraction =
        1.0 - static_cast<double>(c.component.size()) / static_cast<double>(c.events.size());
    c.cloud = c.n_components == 1 ? c.dist : restrict(c.dist, c.component);
  });
  return c;
}

TopologyResult analyse_cloud(const DistanceMatrix& cloud, const SubsampleParams& p,
                             std::optional<double> eps_max, Timings* timings) {
  TopologyResult t;
  t.landmarks = stage("subsample", timings, [&] { return select_landmarks(cloud, p); });
  stage("persistence", timings, [&] {
    t.landmark_dist = restrict(cloud, t.landmarks);
    t.eps_max = eps_max ? *eps_max : t.landmark_dist.max_finite();
    if (t.eps_max > 0.0) {
      t.dgm = persistence_cohomology(t.landmark_dist, t.eps_max);
    } else {
      // Every landmark coincides: a single class that never dies.
      t.dgm.points = {{0, 0.0, kInf}};
    }
    t.lengths1 = interval_lengths(t.dgm, 1, t.eps_max);
  });
  return t;
}

PipelineResult run_stages(const Scenario& s, const Environment* env_override) {
  stage("config", nullptr, [&] { s.validate(); });
  const Environment& env = env_override ? *env_override : s.env;
  PipelineResult r;
  r.cloud = build_cloud(s, env, &r.timings);
  if (r.cloud.n_components > 1) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "encounter graph has %d components; kept the largest, discarding %.4f of events",
                  r.cloud.n_components, r.cloud.discarded_fraction);
    r.warnings.emplace_back(buf);
  }
  r.topo = analyse_cloud(r.cloud.cloud, s.subsample, s.eps_max, &r.timings);
  if (r.topo.eps_max <= 0.0) r.warnings.emplace_back("all landmark distances are zero");
  for (std::size_t i : r.topo.landmarks) r.landmark_events.push_back(r.cloud.component[i]);

  stage("analysis", &r.timings, [&] {
    r.betti_true = betti_ground_truth(env);
    r.betti_hat.first = r.topo.dgm.infinite_count(0);
    r.betti_hat.second = betti_function(r.topo.lengths1, s.classifier);
    r.snr = snr(r.topo.lengths1, r.betti_true.second);
    r.gap_ratio = dominant_gap_ratio(r.topo.lengths1);
    r.embedding = mds_embed(r.topo.landmark_dist, s.embed_dim);
  });
  if (r.embedding.degenerate) r.warnings.emplace_back("too few landmarks for the embedding");
  return r;
}

PipelineResult run_pipeline(const Scenario& s, const std::filesystem::path& out,
                            const Environment* env) {
  PipelineResult r = run_stages(s, env);
  stage("write", &r.timings, [&] {
    std::filesystem::create_directories(out);
    io::write_status(out / "status.csv", r.cloud.sim.status);
    if (s.write_trajectory) io::write_trajectory(out / "traj.csv", r.cloud.sim.trajectory);
    io::write_events(out / "events.csv", r.cloud.events);
    io::write_distances(out / "dist.csv", r.cloud.dist);
    io::write_landmarks(out / "landmarks.csv", r.landmark_events);
    io::write_diagram(out / "dgm.csv", r.topo.dgm);
    io::write_diagram(out / "dgm0_full.csv", r.cloud.dgm0_full);
    io::write_embedding(out / "embedding.csv", r.embedding);
    io::write_text(out / "summary.json", summary_json(s, r).dump(2) + "\n");
  });
  return r;
}

Environment batch_environment(const Scenario& s, std::uint64_t seed) {
  if (!s.batch.layout) return s.env;
  const RandomLayout& l = *s.batch.layout;
  Rng rng(seed * 7919 + static_cast<std::uint64_t>(l.n_holes));
  return random_environment(s.env.outer(), l.n_holes, l.hole_side, l.clearance, rng);
}

BatchResult run_batch(const Scenario& s, const std::filesystem::path& out, std::ostream* log) {
  stage("config", nullptr, [&] { s.validate(); });
  const BatchConfig& b = s.batch;
  BatchResult res;
  res.runs.resize(static_cast<std::size_t>(b.n_runs));
  const bool write = !out.empty();
  int done = 0;

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < b.n_runs; ++i) {
    RunRecord& rec = res.runs[static_cast<std::size_t>(i)];
    rec.run = i;
    rec.seed = b.seed_base + static_cast<std::uint64_t>(i);
    try {
      Scenario sc = s;
      sc.set_seed(rec.seed);
      const Environment env =
          stage("environment", nullptr, [&] { return batch_environment(sc, rec.seed); });
      rec.betti_true1 = betti_ground_truth(env).second;
      const std::filesystem::path dir =
          write ? out / "runs" / ("run_" + std::to_string(10000 + i).substr(1)) : std::filesystem::path();
      if (b.mode == BatchMode::kSnr) {
        const CloudResult cloud = build_cloud(sc, env);
        for (SubsampleMethod m : b.methods) {
          SubsampleParams p = sc.subsample;
          p.method = m;
          const TopologyResult t = analyse_cloud(cloud.cloud, p, sc.eps_max);
          rec.snr.push_back({m, snr(t.lengths1, rec.betti_true1)});
          if (m == sc.subsample.method) rec.lengths1 = t.lengths1;
          if (write) {
            io::write_diagram(dir / ("dgm_" + std::string(subsample_method_name(m)) + ".csv"), t.dgm);
          }
        }
      } else if (write && b.keep_artifacts) {
        rec.lengths1 = run_pipeline(sc, dir, &env).topo.lengths1;
      } else {
        const PipelineResult r = run_stages(sc, &env);
        rec.lengths1 = r.topo.lengths1;
        if (write) io::write_diagram(dir / "dgm.csv", r.topo.dgm);
      }
      rec.betti_hat1 = betti_function(rec.lengths1, s.classifier);
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
#pragma omp critical(encmap_batch_log)
    {
      ++done;
      if (log) {
        *log << "run " << rec.run << " seed " << rec.seed << (rec.ok ? " ok" : " FAILED: ")
             << rec.error << " (" << done << "/" << b.n_runs << ")\n";
        log->flush();
      }
    }
  }

  // Aggregation runs serially in run order, so thread scheduling cannot
  // change the result.
  std::vector<int> predicted, truth;
  TrainingSet ts;
  for (const RunRecord& rec : res.runs) {
    if (!rec.ok) {
      ++res.failed;
      continue;
    }
    ts.push_back({rec.lengths1, rec.betti_true1});
    truth.push_back(rec.betti_true1);
  }
  if (res.failed == b.n_runs) {
    throw Error("[batch] all " + std::to_string(b.n_runs) + " runs failed; first error: " +
                res.runs.front().error);
  }

  if (b.mode == BatchMode::kSnr) {
    for (std::size_t k = 0; k < b.methods.size(); ++k) {
      MethodAggregate agg;
      agg.method = b.methods[k];
      double sum = 0.0;
      for (const RunRecord& rec : res.runs) {
        if (!rec.ok) continue;
        const double v = rec.snr[k].snr.value;
        ++agg.runs;
        if (std::isinf(v)) {
          ++agg.infinite;
        } else {
          sum += v;
        }
      }
      agg.mean_finite_snr = safe_mean(sum, agg.runs - agg.infinite);
      agg.mean_snr = agg.infinite > 0 ? kInf : agg.mean_finite_snr;
      res.methods.push_back(agg);
    }
  }

  res.theta = s.classifier;
  if (b.mode == BatchMode::kTrain) {
    res.training = train(ts, ParamGrid::defaults(), s.smooth_alpha);
    res.theta = res.training->theta;
  }
  for (const TrainingItem& it : ts) predicted.push_back(betti_function(it.lengths, res.theta));
  res.sensitivity = sensitivity(predicted, truth);
  if (b.mode == BatchMode::kTrain) {
    std::size_t k = 0;
    for (RunRecord& rec : res.runs) {
      if (rec.ok) rec.betti_hat1 = predicted[k++];
    }
  }

  if (write) {
    Json j;
    j["mode"] = std::string(batch_mode_name(b.mode));
    j["n_runs"] = b.n_runs;
    j["seed_base"] = b.seed_base;
    j["failed"] = res.failed;
    if (b.mode == BatchMode::kSnr) {
      Json m = Json::array();
      std::vector<io::SnrRecord> rows;
      for (const MethodAggregate& a : res.methods) {
        m.push_back({{"method", std::string(subsample_method_name(a.method))},
                     {"mean_snr", number(a.mean_snr)},
                     {"mean_finite_snr", a.mean_finite_snr},
                     {"infinite", a.infinite},
                     {"runs", a.runs}});
      }
      for (const RunRecord& rec : res.runs) {
        for (const MethodSnr& ms : rec.snr) {
          rows.push_back({rec.run, std::string(subsample_method_name(ms.method)), ms.snr.value});
        }
      }
      j["methods"] = m;
      io::write_snr(out / "snr.csv", rows);
    }
    j["theta"] = {{"q", res.theta.q}, {"delta_s", res.theta.delta}, {"tau", res.theta.tau}};
    if (res.training) {
      j["training"] = {{"cost", res.training->cost},
                       {"grid_cost", res.training->grid_cost},
                       {"refined", res.training->refined}};
      io::write_classifier(out / "classifier.csv", {res.theta, res.training->cost});
    }
    j["sensitivity"] = res.sensitivity;
    Json runs = Json::array();
    for (const RunRecord& rec : res.runs) {
      Json r = {{"run", rec.run}, {"seed", rec.seed}, {"ok", rec.ok}};
      if (!rec.ok) {
        r["error"] = rec.error;
      } else {
        r["betti_true1"] = rec.betti_true1;
        r["betti_hat1"] = rec.betti_hat1;
        r["dim1_longest_s"] = top_lengths(rec.lengths1, 3);
      }
      runs.push_back(r);
    }
    j["runs"] = runs;
    io::write_text(out / "batch_summary.json", j.dump(2) + "\n");
  }
  return res;
}

}  // namespace encmap
