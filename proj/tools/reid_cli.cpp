// Command-line front end: dataset tooling, model training, evaluation, and
// the client/server pair.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "reid/color/semantic_color.hpp"
#include "reid/data/dataset.hpp"
#include "reid/data/fixture.hpp"
#include "reid/error.hpp"
#include "reid/evaluation/metrics.hpp"
#include "reid/pipeline.hpp"
#include "reid/service/client.hpp"
#include "reid/service/server.hpp"

namespace fs = std::filesystem;
using namespace reid;

namespace {

struct Globals {
  std::string config_path;
  std::uint64_t seed = 1;

  PipelineConfig config() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    c.bow.seed = seed;
    return c;
  }
};

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7450;
};

void add_endpoint(CLI::App* cmd, Endpoint& e) {
  cmd->add_option("--host", e.host, "Server address");
  cmd->add_option("--port", e.port, "Server port");
}

fs::path model_path(const fs::path& dir, const char* name) { return dir / name; }

PcaModel load_pca(const fs::path& models) { return PcaModel::load(model_path(models, model_file::kPca).string()); }

SkinHairModel load_skin_hair(const fs::path& models) {
  return SkinHairModel::load(model_path(models, model_file::kSkinHair).string());
}

std::string sequence_id_of(const fs::path& dir) { return dir.filename().string(); }

std::uint32_t subject_of(const std::map<std::string, std::uint32_t>& ids, const std::string& sequence) {
  const auto it = ids.find(sequence);
  if (it == ids.end()) throw DataError("identities.tsv has no subject for sequence " + sequence);
  return it->second;
}

// Mean of the identity vectors of a sequence's gated frames.
std::vector<double> mean_vector(const std::vector<std::vector<double>>& rows) {
  std::vector<double> mean(rows.front().size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) mean[i] += r[i] / static_cast<double>(rows.size());
  }
  return mean;
}

void print_ranking(const std::vector<RankedSubject>& ranking) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    std::cout << i + 1 << '\t' << ranking[i].subject_id << '\t' << std::setprecision(6) << ranking[i].distance
              << '\n';
  }
}

// --- commands -------------------------------------------------------------

void cmd_fixture(const Globals& g, const fs::path& out, int subjects, int frames, int probes, int annotated,
                 bool permute, int bench_train, int bench_test) {
  if (bench_train > 0 || bench_test > 0) {
    generate_benchmark_layout(out, g.seed, bench_train, bench_test);
    std::cout << "wrote benchmark layout " << bench_train << " train / " << bench_test << " test sequences to "
              << out << '\n';
    return;
  }
  FixtureOptions o;
  o.seed = g.seed;
  o.subjects = subjects;
  o.frames_per_subject = frames;
  o.probe_frames = probes;
  o.annotated_images = annotated;
  o.permute_probe_colors = permute;
  generate_fixture(out, o);
  std::cout << "wrote " << subjects << " subjects to " << out << '\n';
}

void cmd_train_skin_hair(const Globals& g, const fs::path& annotated, const fs::path& models) {
  const auto images = load_annotated(annotated);
  const auto model = train_skin_hair(images, g.config().descriptor.features);
  fs::create_directories(models);
  model.save(model_path(models, model_file::kSkinHair).string());
  std::cout << "trained skin/hair detectors on " << images.size() << " images\n";
}

void cmd_extract(const Globals& g, const fs::path& sequence, const fs::path& models, const fs::path& out) {
  const auto config = g.config();
  const auto pca = load_pca(models);
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& s : extract_sequence(sequence, load_skin_hair(models), config.descriptor)) {
    frames.push_back({{"sequence", s.sequence_id},
                      {"frame", s.frame_index},
                      {"clothing", compress(pca, s.pooled).values},
                      {"identity", identity_vector(s, pca, config.descriptor.skeleton_weight)}});
  }
  const std::string text = dump_json(frames);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

void cmd_train_pca(const Globals& g, const fs::path& corpus, const fs::path& models, int dim,
                   std::size_t max_frames) {
  auto config = g.config();
  if (dim > 0) config.descriptor.pca_dim = dim;
  const auto skin_hair = load_skin_hair(models);
  std::vector<FrameSample> samples;
  for (const auto& dir : index_corpus(corpus).train) {
    auto s = extract_sequence(dir, skin_hair, config.descriptor, max_frames);
    samples.insert(samples.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  if (samples.size() < 2) throw DataError("need at least two gated training frames, found " + std::to_string(samples.size()));
  const auto model = train_descriptor_model(samples, config.descriptor);
  model.save(model_path(models, model_file::kPca).string());
  std::cout << "PCA " << model.input_dim << " -> " << model.output_dim << " from " << samples.size() << " frames\n";
}

void cmd_train_global(const Globals& g, const fs::path& annotated, const fs::path& models) {
  const auto config = g.config();
  const auto images = load_annotated(annotated);
  const auto result = train_global(images, config.descriptor.features);
  fs::create_directories(models);
  result.model.save(model_path(models, model_file::kGlobal).string());
  const auto& vocab = Vocabulary::canonical();
  std::cout << "global parse: " << (Vocabulary::kSize - result.omitted.size()) << " labels trained";
  if (!result.omitted.empty()) {
    std::cout << ", " << result.omitted.size() << " without pixels (e.g. " << vocab.name(result.omitted.front())
              << ")";
  }
  std::cout << '\n';

  const auto skin_hair = load_skin_hair(models);
  std::vector<FeatureMap> maps;
  for (const auto& img : images) maps.push_back(person_features(person_view(img), skin_hair, config.descriptor.features));
  const auto bow = train_bow_vocabulary(maps, config.bow);
  bow.save(model_path(models, model_file::kBow).string());
  std::cout << "BoW vocabulary: " << bow.dimension() << " words\n";
}

void cmd_build_fashion(const Globals& g, const fs::path& annotated, const fs::path& models, const fs::path& out) {
  const auto config = g.config();
  const auto parse_models = ParseModels::load(models);
  const auto pca = load_pca(models);
  std::vector<FashionEntry> entries;
  for (const auto& img : load_annotated(annotated)) entries.push_back(make_fashion_entry(img, parse_models, pca, config));
  save_fashion_store(out, entries);
  std::cout << "fashion gallery: " << entries.size() << " entries in " << out << '\n';
}

void cmd_optimize_weights(const Globals& g, const fs::path& annotated, const fs::path& models,
                          const fs::path& fashion_dir) {
  const auto config = g.config();
  const auto parse_models = ParseModels::load(models);
  const FashionGallery fashion(load_fashion_store(fashion_dir));
  const auto images = load_annotated(annotated);
  const auto corpus = weight_search_corpus(images, fashion, parse_models, load_pca(models), config);
  const auto result = optimize_weights(corpus);
  save_weights(model_path(models, model_file::kWeights), result.weights);
  std::cout << "weights global=" << result.weights.global << " transfer=" << result.weights.transfer
            << " foreground accuracy=" << result.accuracy << " (" << result.search.evaluations << " evaluations)\n";
}

// Identity vectors of every gated frame of the given sequences.
std::vector<std::pair<std::string, std::vector<double>>> identity_rows(const std::vector<fs::path>& sequences,
                                                                       const fs::path& models,
                                                                       const PipelineConfig& config,
                                                                       bool aggregate) {
  const auto skin_hair = load_skin_hair(models);
  const auto pca = load_pca(models);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  for (const auto& dir : sequences) {
    std::vector<std::vector<double>> vectors;
    for (const auto& s : extract_sequence(dir, skin_hair, config.descriptor)) {
      vectors.push_back(identity_vector(s, pca, config.descriptor.skeleton_weight));
    }
    if (vectors.empty()) {
      std::cerr << "warning: no gated frames in " << dir << '\n';
      continue;
    }
    if (aggregate) {
      rows.emplace_back(sequence_id_of(dir), mean_vector(vectors));
    } else {
      for (auto& v : vectors) rows.emplace_back(sequence_id_of(dir), std::move(v));
    }
  }
  return rows;
}

void cmd_enroll(const Globals& g, const fs::path& corpus, const fs::path& models, const fs::path& gallery_path,
                const Endpoint& endpoint, bool aggregate) {
  const auto config = g.config();
  const auto ids = load_identities(corpus / "identities.tsv");
  const auto rows = identity_rows(index_corpus(corpus).train, models, config, aggregate);
  if (rows.empty()) throw DataError("no enrollment frames found under " + corpus.string());

  if (!gallery_path.empty()) {
    GalleryFile file;
    if (fs::exists(gallery_path)) file = load_gallery(gallery_path.string());
    if (file.entries.empty()) file.dim = static_cast<std::uint32_t>(rows.front().second.size());
    for (const auto& [seq, v] : rows) {
      if (v.size() != file.dim) throw DataError("descriptor dimension does not match the gallery");
      file.entries.push_back({subject_of(ids, seq), seq, v});
    }
    save_gallery(file, gallery_path.string());
    std::cout << "gallery " << gallery_path << ": " << file.entries.size() << " entries\n";
    return;
  }
  Client client(endpoint.host, endpoint.port);
  std::uint32_t count = 0;
  for (const auto& [seq, v] : rows) count = client.enroll(subject_of(ids, seq), seq, v);
  std::cout << "server gallery: " << count << " entries\n";
}

void cmd_identify(const Globals& g, const fs::path& sequence, const fs::path& models, const fs::path& gallery_path,
                  const Endpoint& endpoint, std::uint32_t k) {
  const auto config = g.config();
  const auto rows = identity_rows({sequence}, models, config, true);
  if (rows.empty()) throw DataError("no gated frames in " + sequence.string());
  const auto& query = rows.front().second;
  if (!gallery_path.empty()) {
    auto file = load_gallery(gallery_path.string());
    const Gallery gallery(file.dim, std::move(file.entries));
    print_ranking(gallery.identify(query, k));
    return;
  }
  Client client(endpoint.host, endpoint.port);
  print_ranking(client.identify(query, k));
}

void cmd_parse(const Globals& g, const fs::path& sequence, int frame_index, const fs::path& models,
               const fs::path& fashion_dir, const Endpoint& endpoint, bool remote, const fs::path& labels_out) {
  const auto config = g.config();
  const auto frames = load_sequence(sequence);
  const Frame* frame = nullptr;
  for (const auto& f : frames) {
    if (f.frame_index == frame_index) frame = &f;
  }
  if (frame == nullptr) throw DataError("no frame " + std::to_string(frame_index) + " in " + sequence.string());
  const PersonView view = person_view(*frame);
  const auto pca = load_pca(models);
  const auto& vocab = Vocabulary::canonical();

  if (remote) {
    const auto sample = describe_view(view, load_skin_hair(models), config.descriptor);
    ParseTagsRequest request;
    request.k = static_cast<std::uint32_t>(config.tag_neighbors);
    request.descriptor = compress(pca, sample.pooled).values;
    request.frame = to_wire(view.rgb, view.mask, view.pose);
    Client client(endpoint.host, endpoint.port);
    for (const auto& t : client.parse_tags(request).tags) {
      std::cout << t.name << '\t' << (t.color ? std::string(color_term_name(*t.color)) : "-") << '\n';
    }
    return;
  }

  const auto parse_models = ParseModels::load(models);
  const FashionGallery fashion(load_fashion_store(fashion_dir));
  const FeatureMap features = person_features(view, parse_models.skin_hair, config.descriptor.features);
  const auto descriptor = compress(pca, clothing_vector(features, view.mask, view.pose, config.descriptor)).values;
  const auto parse = parse_person(view, features, descriptor, fashion, parse_models, config);
  std::map<LabelId, ColorTerm> colors;
  for (const auto& c : item_colors(view.rgb, parse, config.color_space)) colors[c.label] = c.term;
  for (LabelId t : parse.tags) {
    const auto it = colors.find(t);
    std::cout << vocab.name(t) << '\t' << (it == colors.end() ? "-" : std::string(color_term_name(it->second)))
              << '\n';
  }
  if (!labels_out.empty()) {
    cv::Mat out;
    parse.labels.convertTo(out, CV_16UC1);
    write_png(labels_out, out);
  }
}

void cmd_evaluate(const Globals& g, const fs::path& corpus, const fs::path& models, const fs::path& fashion_dir,
                  std::size_t max_rank) {
  const auto config = g.config();
  const auto ids = load_identities(corpus / "identities.tsv");
  const auto index = index_corpus(corpus);

  std::vector<GalleryEntry> entries;
  for (auto& [seq, v] : identity_rows(index.train, models, config, false)) {
    entries.push_back({subject_of(ids, seq), seq, std::move(v)});
  }
  if (entries.empty()) throw DataError("no enrollment frames under " + corpus.string());
  const auto dim = static_cast<std::uint32_t>(entries.front().descriptor.size());
  const Gallery gallery(dim, std::move(entries));

  std::vector<std::vector<RankedSubject>> rankings;
  std::vector<std::uint32_t> truth;
  for (const auto& [seq, v] : identity_rows(index.test, models, config, false)) {
    rankings.push_back(gallery.identify(v, gallery.entries().size()));
    truth.push_back(subject_of(ids, seq));
  }
  const auto cmc = cmc_curve(rankings, truth, max_rank);
  std::cout << "probes\t" << rankings.size() << '\n';
  for (std::size_t k = 0; k < cmc.size(); ++k) std::cout << "rank-" << k + 1 << '\t' << cmc[k] << '\n';

  if (fashion_dir.empty()) return;
  const FashionGallery fashion(load_fashion_store(fashion_dir));
  const auto pca = load_pca(models);
  const auto skin_hair = load_skin_hair(models);
  std::map<std::string, TagSet> gt;
  for (const auto& r : load_ground_truth(corpus / "ground_truth.tsv")) gt[r.sequence_id] = r.tags;
  std::vector<TagScores> scores;
  for (const auto& dir : index.test) {
    const auto it = gt.find(sequence_id_of(dir));
    if (it == gt.end()) continue;
    const auto samples = extract_sequence(dir, skin_hair, config.descriptor);
    if (samples.empty()) continue;
    const auto predicted =
        fashion.retrieve_tags(compress(pca, samples.front().pooled).values, config.tag_neighbors, config.vote_min);
    scores.push_back(evaluate_tags(predicted, it->second));
  }
  const auto mean = mean_scores(scores);
  std::cout << "tag_precision\t" << mean.precision << "\ntag_recall\t" << mean.recall << "\ntag_f1\t" << mean.f1
            << '\n';
}

void cmd_serve(const Globals& g, const fs::path& gallery_path, std::uint32_t dim, const Endpoint& endpoint,
               const fs::path& fashion_dir, const fs::path& models) {
  ServerOptions o;
  o.host = endpoint.host;
  o.port = endpoint.port;
  o.gallery_path = gallery_path;
  o.dim = dim;
  o.config = g.config();
  if (!fashion_dir.empty()) o.fashion_dir = fashion_dir;
  if (!models.empty()) o.model_dir = models;
  Server server(std::move(o));
  const auto port = server.listen();
  // Runs until killed; every acknowledged enrollment is already on disk.
  std::cout << "listening on " << endpoint.host << ':' << port << std::endl;
  server.serve();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Person re-identification toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON pipeline configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for stochastic steps");

  fs::path out, corpus, models, annotated, sequence, gallery, fashion, labels_out;
  int subjects = 10, frames = 4, probes = 2, annotated_count = 8, bench_train = 0, bench_test = 0, dim = 0,
      frame_index = 0;
  std::size_t max_frames = 0, max_rank = 10;
  std::uint32_t k = 10, server_dim = 0;
  bool permute = false, aggregate = false, remote = false;
  Endpoint endpoint;

  auto* fixture = app.add_subcommand("fixture", "Generate a synthetic corpus");
  fixture->add_option("--out", out, "Output directory")->required();
  fixture->add_option("--subjects", subjects, "Number of subjects");
  fixture->add_option("--frames", frames, "Enrollment frames per subject");
  fixture->add_option("--probes", probes, "Probe frames per subject");
  fixture->add_option("--annotated", annotated_count, "Annotated fashion images");
  fixture->add_flag("--permute-colors", permute, "Probes wear another subject's clothing colors");
  fixture->add_option("--benchmark-train", bench_train, "Write a benchmark-shaped layout instead");
  fixture->add_option("--benchmark-test", bench_test, "Probe sequences of the benchmark layout");

  auto* skin = app.add_subcommand("train-skin-hair", "Train skin and hair detectors");
  skin->add_option("--annotated", annotated, "Annotated image directory")->required();
  skin->add_option("--models", models, "Model directory")->required();

  auto* extract = app.add_subcommand("extract", "Print descriptors of a sequence's gated frames");
  extract->add_option("--sequence", sequence, "Sequence directory")->required();
  extract->add_option("--models", models, "Model directory")->required();
  extract->add_option("--out", out, "Write JSON here instead of stdout");

  auto* pca = app.add_subcommand("train-pca", "Train the clothing descriptor PCA");
  pca->add_option("--corpus", corpus, "Corpus root")->required();
  pca->add_option("--models", models, "Model directory")->required();
  pca->add_option("--dim", dim, "Output dimension (default from config)");
  pca->add_option("--max-frames", max_frames, "Gated frames per sequence (0 = all)");

  auto* global = app.add_subcommand("train-global", "Train the global parse model and BoW vocabulary");
  global->add_option("--annotated", annotated, "Annotated image directory")->required();
  global->add_option("--models", models, "Model directory")->required();

  auto* build = app.add_subcommand("build-fashion", "Build the fashion gallery from annotated images");
  build->add_option("--annotated", annotated, "Annotated image directory")->required();
  build->add_option("--models", models, "Model directory")->required();
  build->add_option("--out", out, "Fashion gallery directory")->required();

  auto* weights = app.add_subcommand("optimize-weights", "Search the parse weights on annotated images");
  weights->add_option("--annotated", annotated, "Annotated image directory")->required();
  weights->add_option("--models", models, "Model directory")->required();
  weights->add_option("--fashion", fashion, "Fashion gallery directory")->required();

  auto* enroll = app.add_subcommand("enroll", "Enroll the training sequences of a corpus");
  enroll->add_option("--corpus", corpus, "Corpus root")->required();
  enroll->add_option("--models", models, "Model directory")->required();
  enroll->add_option("--gallery", gallery, "Write to a local gallery file instead of a server");
  enroll->add_flag("--aggregate", aggregate, "Enroll one mean descriptor per sequence");
  add_endpoint(enroll, endpoint);

  auto* identify = app.add_subcommand("identify", "Rank enrolled subjects for a probe sequence");
  identify->add_option("--sequence", sequence, "Probe sequence directory")->required();
  identify->add_option("--models", models, "Model directory")->required();
  identify->add_option("--gallery", gallery, "Query a local gallery file instead of a server");
  identify->add_option("-k", k, "Neighbors to retrieve");
  add_endpoint(identify, endpoint);

  auto* parse = app.add_subcommand("parse", "Parse the clothing of one frame");
  parse->add_option("--sequence", sequence, "Sequence directory")->required();
  parse->add_option("--frame", frame_index, "Frame index");
  parse->add_option("--models", models, "Model directory")->required();
  parse->add_option("--fashion", fashion, "Fashion gallery directory (local parse)");
  parse->add_flag("--remote", remote, "Ask the server instead");
  parse->add_option("--labels-out", labels_out, "Write the label map as a 16-bit PNG");
  add_endpoint(parse, endpoint);

  auto* evaluate = app.add_subcommand("evaluate", "CMC over the probe sequences and tag precision/recall");
  evaluate->add_option("--corpus", corpus, "Corpus root")->required();
  evaluate->add_option("--models", models, "Model directory")->required();
  evaluate->add_option("--fashion", fashion, "Fashion gallery directory (enables tag scores)");
  evaluate->add_option("--max-rank", max_rank, "Length of the CMC curve");

  auto* serve = app.add_subcommand("serve", "Run the enrollment/identification server");
  serve->add_option("--gallery", gallery, "Gallery file (created on first enrollment)")->required();
  serve->add_option("--dim", server_dim, "Descriptor dimension for a new gallery");
  serve->add_option("--fashion", fashion, "Fashion gallery directory");
  serve->add_option("--models", models, "Model directory (needed with --fashion)");
  add_endpoint(serve, endpoint);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*fixture) cmd_fixture(g, out, subjects, frames, probes, annotated_count, permute, bench_train, bench_test);
    if (*skin) cmd_train_skin_hair(g, annotated, models);
    if (*extract) cmd_extract(g, sequence, models, out);
    if (*pca) cmd_train_pca(g, corpus, models, dim, max_frames);
    if (*global) cmd_train_global(g, annotated, models);
    if (*build) cmd_build_fashion(g, annotated, models, out);
    if (*weights) cmd_optimize_weights(g, annotated, models, fashion);
    if (*enroll) cmd_enroll(g, corpus, models, gallery, endpoint, aggregate);
    if (*identify) cmd_identify(g, sequence, models, gallery, endpoint, k);
    if (*parse) {
      if (!remote && fashion.empty()) throw InvalidArgument("parse needs --fashion or --remote");
      cmd_parse(g, sequence, frame_index, models, fashion, endpoint, remote, labels_out);
    }
    if (*evaluate) cmd_evaluate(g, corpus, models, fashion, max_rank);
    if (*serve) cmd_serve(g, gallery, server_dim, endpoint, fashion, models);
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
