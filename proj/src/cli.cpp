#include "periodica/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "periodica/chemotopology.hpp"
#include "periodica/csv.hpp"
#include "periodica/element_data.hpp"
#include "periodica/errors.hpp"
#include "periodica/patterns.hpp"
#include "periodica/posets.hpp"
#include "periodica/sequences.hpp"
#include "periodica/shell_orders.hpp"
#include "periodica/tree_io.hpp"

namespace periodica {

namespace {

using nlohmann::json;

// Options shared by the subcommands that run the clustering pipeline.
struct PipelineOptions {
  std::string table_path;
  std::vector<std::string> properties = default_analysis_properties();
  std::string metric = "euclidean";
  std::string linkage = "average";
  bool no_standardize = false;
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& opt) {
  cmd->add_option("--table", opt.table_path, "element property table (CSV)")
      ->required();
  cmd->add_option("--props", opt.properties,
                  "properties to use (default: bulk cohesion profile)")
      ->delimiter(',');
  cmd->add_option("--metric", opt.metric, "distance metric")
      ->check(CLI::IsMember({"euclidean", "manhattan"}));
  cmd->add_option("--linkage", opt.linkage, "agglomerative linkage")
      ->check(CLI::IsMember({"single", "complete", "average"}));
  cmd->add_flag("--no-standardize", opt.no_standardize,
                "use raw property columns instead of standardized ones");
}

Metric parse_metric(const std::string& name) {
  return name == "manhattan" ? Metric::Manhattan : Metric::Euclidean;
}

Linkage parse_linkage(const std::string& name) {
  if (name == "single") return Linkage::Single;
  if (name == "complete") return Linkage::Complete;
  return Linkage::Average;
}

struct Pipeline {
  PropertyTable table;
  DistanceResult distances;
  Dendrogram tree;
};

Pipeline run_pipeline(const PipelineOptions& opt, std::ostream& err) {
  PropertyTable table = PropertyTable::load_file(opt.table_path);
  StandardizedMatrix matrix = opt.no_standardize
                                  ? raw_columns(table, opt.properties)
                                  : standardize(table, opt.properties);
  DistanceResult distances = distance_matrix(matrix, parse_metric(opt.metric));
  if (!distances.excluded.empty()) {
    err << "warning: excluded for missing values:";
    for (const auto& id : distances.excluded) err << ' ' << id;
    err << '\n';
  }
  Dendrogram tree = agglomerative_cluster(distances.matrix, parse_linkage(opt.linkage));
  return {std::move(table), std::move(distances), std::move(tree)};
}

std::vector<std::string> read_symbol_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open element set file '" + path + "'");
  auto rows = csv::read(in);
  std::vector<std::string> symbols;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (r == 0 && rows[r] == std::vector<std::string>{"symbol"}) continue;
    if (rows[r].size() != 1)
      throw InputError("element set file: row " + std::to_string(r + 1) +
                       " must hold exactly one symbol");
    symbols.push_back(rows[r][0]);
  }
  return symbols;
}

LayoutFixture load_layout_or_default(const std::string& path) {
  if (path.empty()) return LayoutFixture::conventional();
  std::ifstream in(path);
  if (!in) throw InputError("cannot open layout file '" + path + "'");
  return LayoutFixture::load(in);
}

void cmd_sequences(std::int64_t max_n, std::ostream& out) {
  out << "n,period_cardinality,accumulated_elements,shell_capacity,triangular,"
         "noble_gas_electrons\n";
  for (std::int64_t n = 1; n <= max_n; ++n) {
    out << n << ',' << seq::period_cardinality(n) << ','
        << seq::accumulated_elements(n) << ',' << seq::shell_capacity(n) << ','
        << seq::triangular(n) << ',' << seq::weise_noble_gas(n) << '\n';
  }
}

void cmd_shells(const std::string& order_text, int count,
                const std::string& format, std::ostream& out) {
  FillingOrder order = FillingOrder::parse(order_text);
  auto shells = enumerate_shells(order, count);
  if (format == "json") {
    json arr = json::array();
    for (Shell s : shells)
      arr.push_back({{"label", s.label()}, {"n", s.n}, {"l", s.l}});
    out << arr.dump() << '\n';
    return;
  }
  for (size_t i = 0; i < shells.size(); ++i)
    out << (i ? " " : "") << shells[i].label();
  out << '\n';
}

void cmd_aufbau(int z, const std::string& order_text, const std::string& format,
                std::ostream& out) {
  FillingOrder order = FillingOrder::parse(order_text);
  Configuration config = aufbau_configuration(z, order);
  if (format == "json") {
    json arr = json::array();
    for (const auto& o : config.shells)
      arr.push_back({{"shell", o.shell.label()}, {"electrons", o.electrons}});
    out << json{{"z", z}, {"configuration", arr}}.dump() << '\n';
    return;
  }
  out << config.text() << '\n';
}

json string_array(const std::vector<std::string>& items) {
  json arr = json::array();
  for (const auto& s : items) arr.push_back(s);
  return arr;
}

void cmd_poset(const std::string& table_path, std::vector<std::string> props,
               const std::vector<std::string>& descending, bool positional,
               const std::string& layout_path, const std::string& monotone_prop,
               const std::string& orientation_text, std::ostream& out,
               std::ostream& err) {
  PropertyTable table = PropertyTable::load_file(table_path);
  LayoutFixture layout = load_layout_or_default(layout_path);

  if (!monotone_prop.empty()) {
    Orientation orientation = orientation_text == "descending"
                                  ? Orientation::Descending
                                  : Orientation::Ascending;
    auto report = monotonicity_report(table, monotone_prop, orientation, layout);
    json violations = json::array();
    for (const auto& [a, b] : report.violations)
      violations.push_back({{"lower", a}, {"upper", b}});
    out << json{{"property", monotone_prop},
                {"orientation", orientation_text},
                {"fraction", report.fraction},
                {"evaluated_covers", report.evaluated},
                {"violations", violations},
                {"excluded", string_array(report.excluded)}}
               .dump()
        << '\n';
    return;
  }

  if (positional) {
    auto result = positional_poset(layout, table.symbols());
    if (!result.excluded.empty()) {
      err << "warning: excluded (no group in layout):";
      for (const auto& s : result.excluded) err << ' ' << s;
      err << '\n';
    }
    out << hasse(result.poset).to_dot();
    return;
  }

  if (props.empty())
    throw InputError("poset needs --props or --positional");
  std::map<std::string, Orientation> orientation;
  for (const auto& p : descending) orientation[p] = Orientation::Descending;
  out << hasse(dominance_poset(table, props, orientation)).to_dot();
}

void cmd_cluster(const PipelineOptions& opt, const std::string& format,
                 const std::string& cut_spec, std::ostream& out, std::ostream& err) {
  Pipeline pipeline = run_pipeline(opt, err);
  if (cut_spec.empty()) {
    if (format == "dot")
      out << to_dot(pipeline.tree);
    else
      out << to_newick(pipeline.tree) << '\n';
    return;
  }

  json result;
  std::vector<std::vector<std::string>> clusters;
  if (cut_spec == "auto") {
    CutSelection selection = select_cut(pipeline.tree);
    clusters = cut_at_count(pipeline.tree, selection.k);
    result["k"] = selection.k;
    result["score"] = selection.score;
    json pops = json::array();
    for (int p : selection.populations) pops.push_back(p);
    result["populations"] = pops;
  } else if (cut_spec.rfind("k:", 0) == 0) {
    long long k = 0;
    if (!csv::parse_int(cut_spec.substr(2), k))
      throw InputError("malformed cluster count in '" + cut_spec + "'");
    clusters = cut_at_count(pipeline.tree, static_cast<int>(k));
    result["k"] = k;
  } else if (cut_spec.rfind("height:", 0) == 0) {
    double h = 0;
    if (!csv::parse_double(cut_spec.substr(7), h))
      throw InputError("malformed cut height in '" + cut_spec + "'");
    clusters = cut_at_height(pipeline.tree, h);
    result["height"] = h;
    result["k"] = clusters.size();
  } else {
    throw InputError("--cut expects auto, k:<count>, or height:<value>");
  }
  json arr = json::array();
  for (const auto& c : clusters) arr.push_back(string_array(c));
  result["clusters"] = arr;
  out << result.dump() << '\n';
}

void cmd_topology(const PipelineOptions& opt, const std::string& set_path,
                  const std::string& op, bool singletons, std::ostream& out,
                  std::ostream& err) {
  Pipeline pipeline = run_pipeline(opt, err);
  Basis basis = branch_basis(pipeline.tree, singletons);
  FiniteTopology space(pipeline.tree.leaves(), basis);
  std::vector<std::string> input = read_symbol_set(set_path);

  std::vector<std::string> result;
  if (op == "closure") result = space.closure(input);
  else if (op == "interior") result = space.interior(input);
  else if (op == "boundary") result = space.boundary(input);
  else result = space.derived_set(input);

  std::sort(input.begin(), input.end());
  std::sort(result.begin(), result.end());
  out << json{{"operation", op},
              {"input", string_array(input)},
              {"result", string_array(result)}}
             .dump()
      << '\n';
}

void cmd_patterns(const PipelineOptions& opt, const std::string& kind, bool widen,
                  bool score, double quantile, const std::string& layout_path,
                  std::ostream& out, std::ostream& err) {
  LayoutFixture layout = load_layout_or_default(layout_path);

  if (kind == "singularity" || kind == "inert-pair") {
    if (score)
      throw InputError("--score applies to pair patterns only (" + kind +
                       " flags single elements)");
    PropertyTable table = PropertyTable::load_file(opt.table_path);
    auto flagged = kind == "singularity"
                       ? singularity_flags(layout, table.symbols())
                       : inert_pair_candidates(layout, table.symbols());
    out << "symbol\n";
    for (const auto& s : flagged) out << s << '\n';
    return;
  }

  auto generate = [&](const std::vector<std::string>& members) {
    if (kind == "diagonal") return diagonal_pairs(layout, members, widen);
    if (kind == "knights-move") return knights_move_pairs(layout, members);
    if (kind == "secondary") return secondary_periodicity_pairs(layout, members);
    throw InputError("unknown pattern kind '" + kind + "'");
  };

  if (!score) {
    PropertyTable table = PropertyTable::load_file(opt.table_path);
    out << "first,second\n";
    for (const auto& p : generate(table.symbols()))
      out << p.first << ',' << p.second << '\n';
    return;
  }

  // Scored pairs are generated over the clustered members only, so every
  // pair member is a dendrogram leaf.
  Pipeline pipeline = run_pipeline(opt, err);
  auto pairs = generate(pipeline.tree.leaves());
  PatternScore result = pattern_score(pairs, pipeline.tree, quantile);
  json verdicts = json::array();
  for (const auto& v : result.verdicts)
    verdicts.push_back({{"first", v.pair.first},
                        {"second", v.pair.second},
                        {"cophenetic", v.cophenetic},
                        {"confirmed", v.confirmed}});
  out << json{{"kind", kind},
              {"quantile", quantile},
              {"threshold", result.threshold},
              {"fraction", result.fraction},
              {"pairs", verdicts}}
             .dump()
      << '\n';
}

void cmd_pettifor(const std::string& map_path, std::ostream& out, std::ostream& err) {
  const PettiforScale& scale = PettiforScale::standard();
  if (map_path.empty()) {
    out << "rank,symbol\n";
    for (int r = 1; r <= scale.size(); ++r) out << r << ',' << scale.at_rank(r) << '\n';
    return;
  }
  std::ifstream in(map_path);
  if (!in) throw InputError("cannot open compounds file '" + map_path + "'");
  StructureMapResult result = structure_map(in, scale);
  for (const auto& e : result.row_errors) err << "warning: " << e << '\n';
  out << "x,y,label\n";
  for (const auto& p : result.points)
    out << p.x << ',' << p.y << ',' << p.label << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"mathematical structures of the periodic system"};
  app.name("periodica");
  app.require_subcommand(1);

  // sequences
  std::int64_t max_n = 8;
  auto* sequences = app.add_subcommand(
      "sequences", "period cardinalities and related integer sequences as CSV");
  sequences->add_option("--max", max_n, "largest period index")
      ->required()
      ->check(CLI::PositiveNumber);

  // shells
  std::string shells_order = "madelung";
  int shells_count = 0;
  std::string shells_format = "text";
  auto* shells = app.add_subcommand("shells", "shell-filling order");
  shells->add_option("--order", shells_order, "madelung | hydrogenic | ray:K");
  shells->add_option("--count", shells_count, "number of shells")
      ->required()
      ->check(CLI::PositiveNumber);
  shells->add_option("--format", shells_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // aufbau
  int aufbau_z = 0;
  std::string aufbau_order = "madelung";
  std::string aufbau_format = "text";
  auto* aufbau = app.add_subcommand("aufbau", "idealized electron configuration");
  aufbau->add_option("--z", aufbau_z, "atomic number")
      ->required()
      ->check(CLI::PositiveNumber);
  aufbau->add_option("--order", aufbau_order, "madelung | hydrogenic | ray:K");
  aufbau->add_option("--format", aufbau_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // poset
  std::string poset_table;
  std::vector<std::string> poset_props;
  std::vector<std::string> poset_desc;
  bool poset_positional = false;
  std::string poset_layout;
  std::string poset_monotone;
  std::string poset_orientation = "ascending";
  auto* poset = app.add_subcommand("poset", "property or positional partial orders (DOT)");
  poset->add_option("--table", poset_table, "element property table (CSV)")->required();
  auto* poset_props_opt =
      poset->add_option("--props", poset_props, "dominance properties")->delimiter(',');
  poset->add_option("--descending", poset_desc, "properties ordered descending")
      ->delimiter(',');
  poset->add_flag("--positional", poset_positional, "product order on table cells")
      ->excludes(poset_props_opt);
  poset->add_option("--layout", poset_layout, "layout CSV (default: built-in)");
  poset->add_option("--monotonicity", poset_monotone,
                    "report cover-pair monotonicity of this property (JSON)");
  poset->add_option("--orientation", poset_orientation, "ascending | descending")
      ->check(CLI::IsMember({"ascending", "descending"}));

  // cluster
  PipelineOptions cluster_opt;
  std::string cluster_format = "newick";
  std::string cluster_cut;
  auto* cluster = app.add_subcommand("cluster", "agglomerative clustering of elements");
  add_pipeline_options(cluster, cluster_opt);
  cluster->add_option("--format", cluster_format, "newick | dot")
      ->check(CLI::IsMember({"newick", "dot"}));
  cluster->add_option("--cut", cluster_cut,
                      "partition instead of tree: auto | k:<count> | height:<value>");

  // topology
  PipelineOptions topo_opt;
  std::string topo_set;
  std::string topo_op;
  bool topo_singletons = false;
  auto* topology = app.add_subcommand(
      "topology", "set operators in the dendrogram-generated finite topology");
  add_pipeline_options(topology, topo_opt);
  topology->add_option("--set", topo_set, "CSV file naming the query set")->required();
  topology->add_option("--op", topo_op, "closure | interior | boundary | derived")
      ->required()
      ->check(CLI::IsMember({"closure", "interior", "boundary", "derived"}));
  topology->add_flag("--singletons", topo_singletons,
                     "include leaf singletons in the basis (discrete topology)");

  // patterns
  PipelineOptions patterns_opt;
  std::string patterns_kind;
  bool patterns_widen = false;
  bool patterns_score = false;
  double patterns_quantile = 0.25;
  std::string patterns_layout;
  auto* patterns = app.add_subcommand("patterns", "positional similarity patterns");
  add_pipeline_options(patterns, patterns_opt);
  patterns
      ->add_option("--kind", patterns_kind,
                   "diagonal | knights-move | secondary | singularity | inert-pair")
      ->required()
      ->check(CLI::IsMember(
          {"diagonal", "knights-move", "secondary", "singularity", "inert-pair"}));
  patterns->add_flag("--widen", patterns_widen, "diagonal pairs beyond period 2");
  patterns->add_flag("--score", patterns_score, "score pairs against the dendrogram");
  patterns->add_option("--quantile", patterns_quantile,
                       "confirmation quantile of cophenetic distances");
  patterns->add_option("--layout", patterns_layout, "layout CSV (default: built-in)");

  // pettifor
  std::string pettifor_map;
  auto* pettifor = app.add_subcommand(
      "pettifor", "the phenomenological element scale and structure maps");
  pettifor->add_option("--map", pettifor_map, "compounds CSV elementA,elementB,structure");

  try {
    std::vector<const char*> argv;
    argv.push_back("periodica");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (sequences->parsed()) cmd_sequences(max_n, out);
    else if (shells->parsed()) cmd_shells(shells_order, shells_count, shells_format, out);
    else if (aufbau->parsed()) cmd_aufbau(aufbau_z, aufbau_order, aufbau_format, out);
    else if (poset->parsed())
      cmd_poset(poset_table, poset_props, poset_desc, poset_positional, poset_layout,
                poset_monotone, poset_orientation, out, err);
    else if (cluster->parsed()) cmd_cluster(cluster_opt, cluster_format, cluster_cut, out, err);
    else if (topology->parsed())
      cmd_topology(topo_opt, topo_set, topo_op, topo_singletons, out, err);
    else if (patterns->parsed())
      cmd_patterns(patterns_opt, patterns_kind, patterns_widen, patterns_score,
                   patterns_quantile, patterns_layout, out, err);
    else if (pettifor->parsed()) cmd_pettifor(pettifor_map, out, err);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run 'periodica --help' for usage\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace periodica
