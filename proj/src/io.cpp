#include "emfdose/io.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <fstream>

#include "emfdose/errors.hpp"
#include "emfdose/report.hpp"
#include "emfdose/toml.hpp"

namespace emfdose::io {

namespace {

using toml::Table;
using toml::Value;

[[noreturn]] void fail(const std::string& file, int line,
                       const std::string& message) {
  std::ostringstream out;
  out << file << ":" << line << ": " << message;
  throw ParseError(out.str());
}

// Strict mode: any key outside `allowed` is an error naming key and line.
void check_keys(const Table& table, std::initializer_list<const char*> allowed,
                const std::string& context, const std::string& file) {
  for (const auto& [key, value] : table.entries) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      fail(file, value.line, "unknown key '" + key + "' in " + context);
  }
}

const Value& require(const Table& table, const std::string& key,
                     const std::string& context, const std::string& file) {
  const Value* value = table.find(key);
  if (value == nullptr)
    fail(file, table.line, "missing key '" + key + "' in " + context);
  return *value;
}

double require_number(const Table& table, const std::string& key,
                      const std::string& context, const std::string& file) {
  const Value& value = require(table, key, context, file);
  if (!value.is_number())
    fail(file, value.line, "key '" + key + "' must be a number");
  return value.number();
}

double optional_number(const Table& table, const std::string& key,
                       double fallback, const std::string& file) {
  const Value* value = table.find(key);
  if (value == nullptr) return fallback;
  if (!value->is_number())
    fail(file, value->line, "key '" + key + "' must be a number");
  return value->number();
}

std::string require_string(const Table& table, const std::string& key,
                           const std::string& context, const std::string& file) {
  const Value& value = require(table, key, context, file);
  if (!value.is_string())
    fail(file, value.line, "key '" + key + "' must be a string");
  return value.string();
}

std::string optional_string(const Table& table, const std::string& key,
                            const std::string& fallback,
                            const std::string& file) {
  const Value* value = table.find(key);
  if (value == nullptr) return fallback;
  if (!value->is_string())
    fail(file, value->line, "key '" + key + "' must be a string");
  return value->string();
}

const toml::Array& require_table_array(const Table& table,
                                       const std::string& key,
                                       const std::string& context,
                                       const std::string& file) {
  const Value& value = require(table, key, context, file);
  if (!value.is_array())
    fail(file, value.line, "key '" + key + "' must be an array of tables");
  for (const auto& element : value.array()) {
    if (!element.is_table())
      fail(file, element.line, "entries of '" + key + "' must be tables");
  }
  return value.array();
}

}  // namespace

std::vector<tissue::TissueProfile> load_tissue_profiles(
    const std::filesystem::path& path) {
  const std::string file = path.string();
  const Table root = toml::parse_file(path);
  check_keys(root, {"tissue"}, "tissue fixture", file);
  const auto& profiles = require_table_array(root, "tissue", "tissue fixture", file);

  std::vector<tissue::TissueProfile> out;
  for (const auto& entry : profiles) {
    const Table& block = entry.table();
    check_keys(block, {"name", "row"}, "[[tissue]]", file);
    const std::string name = require_string(block, "name", "[[tissue]]", file);
    const auto& rows = require_table_array(block, "row", "[[tissue]]", file);

    std::vector<tissue::TissueRow> parsed;
    for (const auto& row_entry : rows) {
      const Table& row = row_entry.table();
      check_keys(row,
                 {"frequency_hz", "eps_real", "sigma_s_per_m",
                  "density_kg_per_m3", "delta_m", "reflection"},
                 "[[tissue.row]]", file);
      tissue::TissueRow r;
      r.frequency_hz = require_number(row, "frequency_hz", "[[tissue.row]]", file);
      r.eps_real = require_number(row, "eps_real", "[[tissue.row]]", file);
      r.conductivity_s_per_m =
          require_number(row, "sigma_s_per_m", "[[tissue.row]]", file);
      r.mass_density_kg_per_m3 =
          require_number(row, "density_kg_per_m3", "[[tissue.row]]", file);
      if (const Value* v = row.find("delta_m")) {
        if (!v->is_number()) fail(file, v->line, "key 'delta_m' must be a number");
        r.penetration_depth_m = v->number();
      }
      if (const Value* v = row.find("reflection")) {
        if (!v->is_number())
          fail(file, v->line, "key 'reflection' must be a number");
        r.reflection = v->number();
      }
      parsed.push_back(r);
    }
    try {
      out.emplace_back(name, std::move(parsed));
    } catch (const InvalidParameter& e) {
      fail(file, entry.table().line, e.what());
    }
  }
  if (out.empty()) throw ParseError(file + ": no [[tissue]] blocks");
  return out;
}

tissue::TissueProfile load_tissue_profile(const std::filesystem::path& path,
                                          const std::string& name) {
  auto profiles = load_tissue_profiles(path);
  for (auto& profile : profiles) {
    if (profile.name() == name) return std::move(profile);
  }
  std::ostringstream msg;
  msg << path.string() << ": no tissue profile named '" << name
      << "' (available:";
  for (const auto& profile : profiles) msg << " '" << profile.name() << "'";
  msg << ")";
  throw ParseError(msg.str());
}

namespace {

compliance::Metric parse_metric(const std::string& text, const std::string& file,
                                int line) {
  if (text == "sar") return compliance::Metric::sar;
  if (text == "pd") return compliance::Metric::pd;
  fail(file, line, "metric must be \"sar\" or \"pd\", got \"" + text + "\"");
}

compliance::Population parse_population(const std::string& text,
                                        const std::string& file, int line) {
  if (text == "general") return compliance::Population::general;
  if (text == "occupational") return compliance::Population::occupational;
  fail(file, line, "population must be \"general\" or \"occupational\"");
}

}  // namespace

compliance::LimitProfile load_limit_profile(const std::filesystem::path& path) {
  const std::string file = path.string();
  const Table root = toml::parse_file(path);
  check_keys(root, {"name", "description", "rule"}, "limit profile", file);
  const std::string name = require_string(root, "name", "limit profile", file);
  const auto& rules = require_table_array(root, "rule", "limit profile", file);

  std::vector<compliance::LimitRule> parsed;
  for (const auto& entry : rules) {
    const Table& block = entry.table();
    check_keys(block,
               {"name", "f_min_hz", "f_max_hz", "metric", "limit", "population",
                "averaging"},
               "[[rule]]", file);
    compliance::LimitRule rule;
    rule.name = optional_string(block, "name", "", file);
    rule.f_min_hz = require_number(block, "f_min_hz", "[[rule]]", file);
    rule.f_max_hz = require_number(block, "f_max_hz", "[[rule]]", file);
    const Value& metric = require(block, "metric", "[[rule]]", file);
    if (!metric.is_string()) fail(file, metric.line, "'metric' must be a string");
    rule.metric = parse_metric(metric.string(), file, metric.line);
    rule.limit_value = require_number(block, "limit", "[[rule]]", file);
    if (const Value* v = block.find("population")) {
      if (!v->is_string()) fail(file, v->line, "'population' must be a string");
      rule.population = parse_population(v->string(), file, v->line);
    }
    rule.averaging = optional_string(block, "averaging", "", file);
    parsed.push_back(std::move(rule));
  }
  try {
    return compliance::LimitProfile(name, std::move(parsed));
  } catch (const InvalidParameter& e) {
    throw ParseError(file + ": " + e.what());
  }
}

namespace {

propagation::GainPattern parse_pattern(const Table& block,
                                       const std::string& file) {
  const std::string type = require_string(block, "type", "pattern", file);
  const Value& type_value = *block.find("type");
  if (type == "isotropic") {
    check_keys(block, {"type"}, "isotropic pattern", file);
    return propagation::Isotropic{};
  }
  if (type == "sector") {
    check_keys(block,
               {"type", "boresight_rad", "half_power_beamwidth_rad", "peak_gain"},
               "sector pattern", file);
    propagation::Sector s;
    s.boresight_rad = optional_number(block, "boresight_rad", 0.0, file);
    s.half_power_beamwidth_rad =
        require_number(block, "half_power_beamwidth_rad", "sector pattern", file);
    s.peak_gain = optional_number(block, "peak_gain", 1.0, file);
    return s;
  }
  if (type == "steered") {
    check_keys(block, {"type", "steer_rad", "exponent", "peak_gain"},
               "steered pattern", file);
    propagation::SteeredBeam b;
    b.steer_rad = optional_number(block, "steer_rad", 0.0, file);
    b.exponent = require_number(block, "exponent", "steered pattern", file);
    b.peak_gain = optional_number(block, "peak_gain", 1.0, file);
    return b;
  }
  fail(file, type_value.line,
       "pattern type must be \"isotropic\", \"sector\", or \"steered\"");
}

compliance::Authority parse_authority(const std::string& text,
                                      const std::string& file, int line) {
  if (text == "icnirp") return compliance::Authority::icnirp;
  if (text == "fcc") return compliance::Authority::fcc;
  fail(file, line, "authority must be \"icnirp\" or \"fcc\"");
}

}  // namespace

scenario::Scenario load_scenario(const std::filesystem::path& scenario_path,
                                 const std::filesystem::path& tissue_path,
                                 const std::filesystem::path& limits_path) {
  const std::string file = scenario_path.string();
  const Table root = toml::parse_file(scenario_path);
  check_keys(root,
             {"tissue", "limits", "authority", "population", "source", "point",
              "grid"},
             "scenario", file);

  const std::string tissue_name = require_string(root, "tissue", "scenario", file);
  const std::string limits_name = require_string(root, "limits", "scenario", file);
  const Value& authority = require(root, "authority", "scenario", file);
  if (!authority.is_string())
    fail(file, authority.line, "'authority' must be a string");

  std::vector<propagation::RadioSource> sources;
  const auto& source_blocks =
      require_table_array(root, "source", "scenario", file);
  for (const auto& entry : source_blocks) {
    const Table& block = entry.table();
    check_keys(block,
               {"position_m", "power_w", "eirp_w", "frequency_hz", "duty_factor",
                "pattern"},
               "[[source]]", file);
    propagation::RadioSource source;

    const Value& position = require(block, "position_m", "[[source]]", file);
    if (!position.is_array() || position.array().size() != 2 ||
        !position.array()[0].is_number() || !position.array()[1].is_number())
      fail(file, position.line, "'position_m' must be [x, y]");
    source.position = {position.array()[0].number(),
                       position.array()[1].number()};

    source.frequency_hz = require_number(block, "frequency_hz", "[[source]]", file);
    source.duty_factor = optional_number(block, "duty_factor", 1.0, file);
    if (const Value* pattern = block.find("pattern")) {
      if (!pattern->is_table())
        fail(file, pattern->line, "'pattern' must be a table");
      source.pattern = parse_pattern(pattern->table(), file);
    }

    const Value* power = block.find("power_w");
    const Value* eirp = block.find("eirp_w");
    if ((power == nullptr) == (eirp == nullptr))
      fail(file, block.line,
           "each [[source]] needs exactly one of 'power_w' or 'eirp_w'");
    if (power != nullptr) {
      if (!power->is_number()) fail(file, power->line, "'power_w' must be a number");
      source.power_w = power->number();
    } else {
      if (!eirp->is_number()) fail(file, eirp->line, "'eirp_w' must be a number");
      // EIRP = P_T · G_peak for the source's own pattern.
      source.power_w = eirp->number() / propagation::peak_gain(source.pattern);
    }
    sources.push_back(std::move(source));
  }

  const Value* point = root.find("point");
  const Value* grid = root.find("grid");
  if ((point == nullptr) == (grid == nullptr))
    fail(file, root.line, "scenario needs exactly one of [point] or [grid]");

  scenario::Evaluation evaluation;
  if (point != nullptr) {
    if (!point->is_table()) fail(file, point->line, "[point] must be a table");
    const Table& block = point->table();
    check_keys(block, {"x_m", "y_m"}, "[point]", file);
    evaluation = scenario::PointEvaluation{
        {require_number(block, "x_m", "[point]", file),
         require_number(block, "y_m", "[point]", file)}};
  } else {
    if (!grid->is_table()) fail(file, grid->line, "[grid] must be a table");
    const Table& block = grid->table();
    check_keys(block, {"x_min_m", "x_max_m", "y_min_m", "y_max_m", "step_m"},
               "[grid]", file);
    scenario::GridEvaluation g;
    g.x_min_m = require_number(block, "x_min_m", "[grid]", file);
    g.x_max_m = require_number(block, "x_max_m", "[grid]", file);
    g.y_min_m = require_number(block, "y_min_m", "[grid]", file);
    g.y_max_m = require_number(block, "y_max_m", "[grid]", file);
    g.step_m = require_number(block, "step_m", "[grid]", file);
    evaluation = g;
  }

  auto tissue_profile = load_tissue_profile(tissue_path, tissue_name);
  auto limit_profile = load_limit_profile(limits_path);
  if (limit_profile.name() != limits_name) {
    std::ostringstream msg;
    msg << file << ": scenario references limit profile '" << limits_name
        << "' but " << limits_path.string() << " defines '"
        << limit_profile.name() << "'";
    throw ParseError(msg.str());
  }

  scenario::Scenario scn{std::move(sources), std::move(tissue_profile),
                         std::move(limit_profile),
                         parse_authority(authority.string(), file, authority.line),
                         compliance::Population::general, evaluation};
  if (const Value* population = root.find("population")) {
    if (!population->is_string())
      fail(file, population->line, "'population' must be a string");
    scn.population =
        parse_population(population->string(), file, population->line);
  }
  try {
    scenario::validate(scn);
  } catch (const Error& e) {
    throw ParseError(file + ": " + e.what());
  }
  return scn;
}

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_pattern(std::ostream& out, const propagation::GainPattern& pattern) {
  out << "\n[source.pattern]\n";
  if (std::holds_alternative<propagation::Isotropic>(pattern)) {
    out << "type = \"isotropic\"\n";
  } else if (const auto* s = std::get_if<propagation::Sector>(&pattern)) {
    out << "type = \"sector\"\n";
    out << "boresight_rad = " << report::format_double(s->boresight_rad) << "\n";
    out << "half_power_beamwidth_rad = "
        << report::format_double(s->half_power_beamwidth_rad) << "\n";
    out << "peak_gain = " << report::format_double(s->peak_gain) << "\n";
  } else {
    const auto& b = std::get<propagation::SteeredBeam>(pattern);
    out << "type = \"steered\"\n";
    out << "steer_rad = " << report::format_double(b.steer_rad) << "\n";
    out << "exponent = " << report::format_double(b.exponent) << "\n";
    out << "peak_gain = " << report::format_double(b.peak_gain) << "\n";
  }
}

}  // namespace

std::string scenario_to_toml(const scenario::Scenario& scn) {
  std::ostringstream out;
  out << "tissue = " << quoted(scn.tissue.name()) << "\n";
  out << "limits = " << quoted(scn.limits.name()) << "\n";
  out << "authority = "
      << (scn.authority == compliance::Authority::fcc ? "\"fcc\"" : "\"icnirp\"")
      << "\n";
  out << "population = "
      << (scn.population == compliance::Population::general ? "\"general\""
                                                             : "\"occupational\"")
      << "\n";
  for (const auto& source : scn.sources) {
    out << "\n[[source]]\n";
    out << "position_m = [" << report::format_double(source.position.x_m) << ", "
        << report::format_double(source.position.y_m) << "]\n";
    out << "power_w = " << report::format_double(source.power_w) << "\n";
    out << "frequency_hz = " << report::format_double(source.frequency_hz) << "\n";
    out << "duty_factor = " << report::format_double(source.duty_factor) << "\n";
    write_pattern(out, source.pattern);
  }
  if (const auto* point = std::get_if<scenario::PointEvaluation>(&scn.evaluation)) {
    out << "\n[point]\n";
    out << "x_m = " << report::format_double(point->point.x_m) << "\n";
    out << "y_m = " << report::format_double(point->point.y_m) << "\n";
  } else {
    const auto& grid = std::get<scenario::GridEvaluation>(scn.evaluation);
    out << "\n[grid]\n";
    out << "x_min_m = " << report::format_double(grid.x_min_m) << "\n";
    out << "x_max_m = " << report::format_double(grid.x_max_m) << "\n";
    out << "y_min_m = " << report::format_double(grid.y_min_m) << "\n";
    out << "y_max_m = " << report::format_double(grid.y_max_m) << "\n";
    out << "step_m = " << report::format_double(grid.step_m) << "\n";
  }
  return out.str();
}

void save_scenario(const scenario::Scenario& scn,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << scenario_to_toml(scn);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<GenerationFixture> load_generations(
    const std::filesystem::path& path) {
  const std::string file = path.string();
  const Table root = toml::parse_file(path);
  check_keys(root, {"generation"}, "comparison config", file);
  const auto& blocks =
      require_table_array(root, "generation", "comparison config", file);

  std::vector<GenerationFixture> out;
  for (const auto& entry : blocks) {
    const Table& block = entry.table();
    check_keys(block,
               {"name", "frequency_hz", "eirp_w", "distance_m", "tissue",
                "duty_factor"},
               "[[generation]]", file);
    GenerationFixture g;
    g.name = require_string(block, "name", "[[generation]]", file);
    g.frequency_hz = require_number(block, "frequency_hz", "[[generation]]", file);
    g.eirp_w = require_number(block, "eirp_w", "[[generation]]", file);
    g.distance_m = require_number(block, "distance_m", "[[generation]]", file);
    g.tissue = require_string(block, "tissue", "[[generation]]", file);
    g.duty_factor = optional_number(block, "duty_factor", 1.0, file);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace emfdose::io
