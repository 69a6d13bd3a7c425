// basinseg command line: synthetic data, watershed, clustering, scoring.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "basinseg/agglomeration.hpp"
#include "basinseg/basin_graph.hpp"
#include "basinseg/benchmark.hpp"
#include "basinseg/io.hpp"
#include "basinseg/metrics.hpp"
#include "basinseg/synth.hpp"
#include "basinseg/watershed.hpp"

using namespace basinseg;

namespace {

constexpr int kUsageError = 2;

struct Input {
  std::string volume;
  std::string edges;
};

struct Loaded {
  DisaffinityGraph graph;
  std::optional<Shape> shape;  // set when the input was a volume
};

void add_input(CLI::App* cmd, Input& in) {
  auto* v = cmd->add_option("--volume", in.volume, "float32 affinity volume [3,Z,Y,X] with .json header");
  auto* e = cmd->add_option("--edges", in.edges, "text edge list `u v w`");
  v->excludes(e);
}

Loaded load(const Input& in) {
  if (!in.volume.empty()) {
    const AffinityVolume vol = io::read_volume(in.volume);
    return {edges_from_volume(vol), vol.shape()};
  }
  if (!in.edges.empty()) return {parse_edge_list(io::read_text(in.edges)), std::nullopt};
  throw InputError("an input is required: --volume or --edges");
}

void add_thresholds(CLI::App* cmd, std::optional<float>& t_min, std::optional<float>& t_max) {
  cmd->add_option("--tmin", t_min, "set disaffinities below this to 0");
  cmd->add_option("--tmax", t_max, "erase edges with disaffinity above this");
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    unsigned long long d = 0;
    try {
      d = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw InputError("bad shape `" + text + "`, expected Z,Y,X");
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (dims.size() != 3) throw InputError("bad shape `" + text + "`, expected Z,Y,X");
  return dims;
}

void print_line(const std::string& s) { std::cout << s << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Watershed and size-dependent single linkage segmentation of affinity graphs", "basinseg"};
  app.require_subcommand(1);

  // synth
  SynthSpec spec;
  std::optional<std::uint64_t> synth_seed;
  std::string synth_shape = "64,64,64";
  std::string out_volume, out_gt;
  auto* synth = app.add_subcommand("synth", "write a synthetic affinity volume and its ground truth");
  synth->add_option("--seed", synth_seed, "random seed")->required();
  synth->add_option("--shape", synth_shape, "Z,Y,X")->capture_default_str();
  synth->add_option("--blobs", spec.blobs, "number of segments")->capture_default_str();
  synth->add_option("--interior-mean", spec.interior_mean)->capture_default_str();
  synth->add_option("--interior-sigma", spec.interior_sigma)->capture_default_str();
  synth->add_option("--boundary-mean", spec.boundary_mean)->capture_default_str();
  synth->add_option("--boundary-sigma", spec.boundary_sigma)->capture_default_str();
  synth->add_option("--organelles", spec.organelles, "walled-off pockets inside segments")->capture_default_str();
  synth->add_option("--leak", spec.leak_rate, "fraction of boundary edges drawn as interior")->capture_default_str();
  synth->add_option("--out-volume", out_volume)->required();
  synth->add_option("--out-gt", out_gt)->required();

  // watershed
  Input ws_in;
  std::optional<float> ws_tmin, ws_tmax;
  std::string ws_seg, ws_basins;
  auto* ws = app.add_subcommand("watershed", "watershed basins and the basin graph");
  add_input(ws, ws_in);
  add_thresholds(ws, ws_tmin, ws_tmax);
  ws->add_option("--out-seg", ws_seg, "basin labels")->required();
  ws->add_option("--out-basins", ws_basins, "basin graph")->required();

  // cluster
  std::string cl_basins, cl_fn, cl_form = "omega", cl_size = "voxels", cl_cut, cl_seg, cl_dendrogram, cl_out_seg;
  auto* cl = app.add_subcommand("cluster", "size-dependent single linkage over a basin graph");
  cl->add_option("--basins", cl_basins, "basin graph")->required();
  cl->add_option("--fn", cl_fn, "<const|linear|square>:<s0>")->required();
  cl->add_option("--form", cl_form, "tau|omega")->capture_default_str();
  cl->add_option("--size", cl_size, "voxels|basins")->capture_default_str();
  cl->add_option("--out-dendrogram", cl_dendrogram)->required();
  cl->add_option("--cut", cl_cut, "flat cut: a saliency or level:k");
  cl->add_option("--seg", cl_seg, "basin labels to relabel with the cut");
  cl->add_option("--out-seg", cl_out_seg, "cut labels; per-basin `basin cluster` lines without --seg");

  // segment
  Input sg_in;
  std::optional<float> sg_tmin, sg_tmax;
  std::string sg_fn, sg_form = "omega", sg_size = "voxels", sg_cut, sg_seg, sg_basins, sg_dendrogram;
  auto* sg = app.add_subcommand("segment", "watershed followed by clustering");
  add_input(sg, sg_in);
  add_thresholds(sg, sg_tmin, sg_tmax);
  sg->add_option("--fn", sg_fn, "<const|linear|square>:<s0>")->required();
  sg->add_option("--form", sg_form, "tau|omega")->capture_default_str();
  sg->add_option("--size", sg_size, "voxels|basins")->capture_default_str();
  sg->add_option("--cut", sg_cut, "a saliency or level:k; default is the final level");
  sg->add_option("--out-seg", sg_seg)->required();
  sg->add_option("--out-basins", sg_basins);
  sg->add_option("--out-dendrogram", sg_dendrogram);

  // eval
  std::string ev_seg, ev_gt, ev_policy = "singleton", ev_table;
  auto* ev = app.add_subcommand("eval", "split and merge scores against ground truth");
  ev->add_option("--seg", ev_seg)->required();
  ev->add_option("--gt", ev_gt)->required();
  ev->add_option("--unlabeled", ev_policy, "drop|singleton")->capture_default_str();
  ev->add_option("--out-table", ev_table, "contingency table as CSV");

  // benchmark
  std::string bm_volume, bm_gt, bm_out, bm_size = "voxels", bm_policy = "singleton";
  std::optional<std::uint64_t> bm_seed;
  std::optional<float> bm_tmin = 0.01f, bm_tmax = 0.9f;
  auto* bm = app.add_subcommand("benchmark", "sweep all methods and write score curves as CSV");
  bm->add_option("--volume", bm_volume, "affinity volume; omit to synthesize one");
  bm->add_option("--gt", bm_gt, "ground truth labels for --volume");
  bm->add_option("--seed", bm_seed, "seed of the synthetic benchmark volume");
  bm->add_option("--tmin", bm_tmin)->capture_default_str();
  bm->add_option("--tmax", bm_tmax)->capture_default_str();
  bm->add_option("--size", bm_size, "voxels|basins")->capture_default_str();
  bm->add_option("--unlabeled", bm_policy, "drop|singleton")->capture_default_str();
  bm->add_option("--out", bm_out, "CSV path; stdout when absent");

  // baseline-fh
  Input fh_in;
  double fh_k = 0.0;
  bool fh_on_basins = false;
  std::optional<float> fh_tmin, fh_tmax;
  std::string fh_seg;
  auto* fh = app.add_subcommand("baseline-fh", "Felzenszwalb-Huttenlocher merging for comparison");
  add_input(fh, fh_in);
  fh->add_option("--k", fh_k, "scale parameter")->required()->check(CLI::NonNegativeNumber);
  fh->add_flag("--on-basins", fh_on_basins, "run on the watershed basin graph instead of voxels");
  add_thresholds(fh, fh_tmin, fh_tmax);
  fh->add_option("--out-seg", fh_seg)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "basinseg: " << msg << '\n';
    return kUsageError;
  }

  try {
    if (synth->parsed()) {
      const auto dims = parse_dims(synth_shape);
      spec.shape = Shape{dims[0], dims[1], dims[2]};
      spec.seed = *synth_seed;
      const SynthVolume sv = synthesize(spec);
      io::write_volume(out_volume, sv.affinity);
      io::write_labels_raw(out_gt, spec.shape, sv.ground_truth);
      print_line("segments " + std::to_string(spec.blobs));
    } else if (ws->parsed()) {
      const PreprocessParams p{ws_tmin, ws_tmax};
      p.validate();
      const Loaded in = load(ws_in);
      const DisaffinityGraph g = preprocess(in.graph, p);
      const Segmentation seg = watershed(g);
      io::write_labels(ws_seg, in.shape, seg.labels());
      io::write_text(ws_basins, format_basin_graph(build_basin_graph(g, seg)));
      print_line("basins " + std::to_string(seg.basin_count()));
    } else if (cl->parsed()) {
      const ThresholdFn tf = ThresholdFn::parse(cl_fn, parse_threshold_kind(cl_form));
      const SizeMeasure measure = parse_size_measure(cl_size);
      const std::optional<Cut> cut = cl_cut.empty() ? std::nullopt : std::optional<Cut>(parse_cut(cl_cut));
      if ((!cl_seg.empty() || !cl_out_seg.empty()) && !cut) throw InputError("--seg and --out-seg need --cut");
      if (cut && cl_out_seg.empty()) throw InputError("--cut needs --out-seg");
      const BasinGraph bg = parse_basin_graph(io::read_text(cl_basins));
      const Dendrogram dg = cluster(bg, tf, measure);
      io::write_text(cl_dendrogram, format_dendrogram(dg));
      print_line("merges " + std::to_string(dg.merges().size()));
      if (cut) {
        const BasinPartition part = flat_cut(dg, *cut);
        if (cl_seg.empty()) {
          std::string out;
          for (std::size_t b = 1; b < part.size(); ++b) {
            out += std::to_string(b) + ' ' + std::to_string(part[b]) + '\n';
          }
          io::write_text(cl_out_seg, out);
        } else {
          io::LabelArray basins = io::read_labels(cl_seg);
          const Segmentation seg = Segmentation::from_labels(std::move(basins.labels));
          if (seg.basin_count() != bg.basin_count()) {
            throw InputError("--seg has " + std::to_string(seg.basin_count()) + " basins, basin graph has " +
                             std::to_string(bg.basin_count()));
          }
          const Segmentation out = apply_partition(seg, part);
          io::write_labels(cl_out_seg, basins.shape, out.labels());
        }
        std::size_t clusters = 0;
        for (std::size_t b = 1; b < part.size(); ++b) clusters = std::max<std::size_t>(clusters, part[b]);
        print_line("segments " + std::to_string(clusters));
      }
    } else if (sg->parsed()) {
      const PreprocessParams p{sg_tmin, sg_tmax};
      p.validate();
      const ThresholdFn tf = ThresholdFn::parse(sg_fn, parse_threshold_kind(sg_form));
      const SizeMeasure measure = parse_size_measure(sg_size);
      const std::optional<Cut> cut = sg_cut.empty() ? std::nullopt : std::optional<Cut>(parse_cut(sg_cut));
      const Loaded in = load(sg_in);
      const DisaffinityGraph g = preprocess(in.graph, p);
      const Segmentation seg = watershed(g);
      const BasinGraph bg = build_basin_graph(g, seg);
      const Dendrogram dg = cluster(bg, tf, measure);
      const Segmentation out = apply_partition(seg, flat_cut(dg, cut.value_or(LevelCut{dg.merges().size()})));
      io::write_labels(sg_seg, in.shape, out.labels());
      if (!sg_basins.empty()) io::write_text(sg_basins, format_basin_graph(bg));
      if (!sg_dendrogram.empty()) io::write_text(sg_dendrogram, format_dendrogram(dg));
      print_line("basins " + std::to_string(seg.basin_count()));
      print_line("segments " + std::to_string(out.basin_count()));
    } else if (ev->parsed()) {
      const io::LabelArray seg = io::read_labels(ev_seg);
      const io::LabelArray gt = io::read_labels(ev_gt);
      const ContingencyTable ct = contingency(seg.labels, gt.labels, parse_unlabeled_policy(ev_policy));
      if (!ev_table.empty()) io::write_text(ev_table, ct.to_csv());
      print_line(format_scores(split_merge_scores(ct), ct.total()));
    } else if (bm->parsed()) {
      BenchmarkConfig cfg = BenchmarkConfig::defaults();
      cfg.preprocess = {bm_tmin, bm_tmax};
      cfg.preprocess.validate();
      cfg.measure = parse_size_measure(bm_size);
      cfg.policy = parse_unlabeled_policy(bm_policy);
      std::vector<BenchmarkRow> rows;
      if (bm_volume.empty() != bm_gt.empty()) throw InputError("--volume and --gt go together");
      if (!bm_volume.empty()) {
        if (bm_seed) throw InputError("--seed only applies to the synthetic benchmark");
        const AffinityVolume vol = io::read_volume(bm_volume);
        const io::LabelArray gt = io::read_labels(bm_gt);
        rows = run_benchmark(vol, gt.labels, cfg);
      } else {
        if (!bm_seed) throw InputError("the synthetic benchmark needs --seed (or give --volume and --gt)");
        const SynthVolume sv = synthesize(SynthSpec::benchmark(*bm_seed));
        rows = run_benchmark(sv.affinity, sv.ground_truth, cfg);
      }
      const std::string csv = format_benchmark_csv(rows);
      if (bm_out.empty()) {
        std::cout << csv;
      } else {
        io::write_text(bm_out, csv);
      }
    } else if (fh->parsed()) {
      const PreprocessParams p{fh_tmin, fh_tmax};
      p.validate();
      const Loaded in = load(fh_in);
      std::vector<Label> labels;
      if (fh_on_basins) {
        const DisaffinityGraph g = preprocess(in.graph, p);
        const Segmentation seg = watershed(g);
        const auto merged = apply_partition(seg, fh_cluster(build_basin_graph(g, seg), fh_k)).labels();
        labels.assign(merged.begin(), merged.end());
      } else {
        labels = fh_cluster(preprocess(in.graph, p), fh_k);
      }
      io::write_labels(fh_seg, in.shape, labels);
      print_line("segments " + std::to_string(Segmentation::from_labels(labels).basin_count()));
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "basinseg: error: " << msg << '\n';
    return kUsageError;
  }
  return 0;
}
