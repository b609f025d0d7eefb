#include "ddvv/config.hpp"

#include <fstream>
#include <thread>

#include "ddvv/errors.hpp"
#include "json.hpp"

namespace ddvv {

namespace {

using njson = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error("ConfigError", path + ": " + msg);
}

double get_num(const njson& j, const std::string& path, const std::string& key) {
  if (!j.at(key).is_number()) fail(path, "'" + key + "' must be a number");
  return j.at(key).get<double>();
}

int get_count(const njson& j, const std::string& path, const std::string& key) {
  if (!j.at(key).is_number_integer() || j.at(key).get<int>() < 1)
    fail(path, "'" + key + "' must be a positive integer");
  return j.at(key).get<int>();
}

Domain parse_domain(const njson& j, const std::string& path) {
  Domain d;
  std::string kind = j.value("kind", std::string("plane"));
  if (kind == "plane") {
    d.kind = Domain::Kind::Plane;
  } else if (kind == "disk") {
    d.kind = Domain::Kind::Disk;
    d.radius = j.value("radius", 1.0);
    if (!(d.radius > 0.0)) fail(path, "domain radius must be positive");
  } else {
    fail(path, "domain kind must be 'plane' or 'disk', got '" + kind + "'");
  }
  return d;
}

MapKind parse_map_kind(const std::string& s, const std::string& path) {
  for (MapKind k :
       {MapKind::EuclideanInversion, MapKind::LorentzInversion,
        MapKind::StereoSphereToPlane, MapKind::StereoPlaneToSphere,
        MapKind::StereoHypToBall, MapKind::StereoBallToHyp})
    if (s == map_kind_name(k)) return k;
  fail(path, "unknown transform kind '" + s + "'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");

  njson j;
  try {
    j = njson::parse(in);
  } catch (const njson::parse_error& e) {
    fail(path, e.what());  // nlohmann message carries line/byte position
  }
  if (!j.is_object()) fail(path, "top level must be an object");

  RunConfig cfg;

  // ---- curve ----
  if (!j.contains("curve")) fail(path, "missing 'curve'");
  const njson& jc = j.at("curve");
  if (jc.contains("builtin")) {
    std::string name = jc.at("builtin").get<std::string>();
    const CatalogEntry* e = find_catalog(name);
    if (!e) {
      std::string names;
      for (const CatalogEntry& ce : catalog())
        names += (names.empty() ? "" : ", ") + ce.curve.name;
      fail(path, "unknown builtin '" + name + "' (available: " + names + ")");
    }
    cfg.curve = e->curve;
    cfg.grid = e->default_grid;
    cfg.from_builtin = true;
  } else {
    if (!jc.contains("n") || !jc.contains("components"))
      fail(path, "curve needs either 'builtin' or 'n' + 'components'");
    cfg.curve.n = jc.at("n").get<int>();
    if (cfg.curve.n < 3) fail(path, "curve n must be >= 3");
    const njson& comps = jc.at("components");
    if (!comps.is_array() ||
        static_cast<int>(comps.size()) != cfg.curve.n + 2)
      fail(path, "curve needs exactly n + 2 = " +
                     std::to_string(cfg.curve.n + 2) + " components");
    for (std::size_t k = 0; k < comps.size(); ++k) {
      std::string src = comps[k].get<std::string>();
      try {
        cfg.curve.components.push_back(parse(src));
      } catch (const SyntaxError& e) {
        fail(path, "component " + std::to_string(k) + " ('" + src +
                       "'): " + e.what());
      }
    }
    if (jc.contains("domain")) cfg.curve.domain = parse_domain(jc.at("domain"), path);
    cfg.curve.name = jc.value("name", std::string("custom"));
    cfg.grid.n = cfg.curve.n;
    cfg.grid.nu = cfg.grid.nv = 10;
    cfg.grid.ntheta = cfg.curve.n == 3 ? 8 : 4;
    cfg.grid.domain = cfg.curve.domain;
  }

  // ---- grid overrides ----
  if (j.contains("grid")) {
    const njson& jg = j.at("grid");
    if (jg.contains("u_min")) cfg.grid.u_min = get_num(jg, path, "u_min");
    if (jg.contains("u_max")) cfg.grid.u_max = get_num(jg, path, "u_max");
    if (jg.contains("v_min")) cfg.grid.v_min = get_num(jg, path, "v_min");
    if (jg.contains("v_max")) cfg.grid.v_max = get_num(jg, path, "v_max");
    if (jg.contains("nu")) cfg.grid.nu = get_count(jg, path, "nu");
    if (jg.contains("nv")) cfg.grid.nv = get_count(jg, path, "nv");
    if (jg.contains("ntheta")) cfg.grid.ntheta = get_count(jg, path, "ntheta");
    if (jg.contains("jitter")) {
      cfg.grid.jitter = get_num(jg, path, "jitter");
      if (cfg.grid.jitter < 0.0 || cfg.grid.jitter > 1.0)
        fail(path, "jitter must lie in [0, 1]");
    }
    if (jg.contains("seed")) cfg.grid.seed = jg.at("seed").get<std::uint64_t>();
    if (!(cfg.grid.u_min < cfg.grid.u_max) || !(cfg.grid.v_min < cfg.grid.v_max))
      fail(path, "grid window must have u_min < u_max and v_min < v_max");
  }

  // ---- tolerance overrides ----
  if (j.contains("tolerances")) {
    const njson& jt = j.at("tolerances");
    auto ovr = [&](const char* key, double& slot) {
      if (!jt.contains(key)) return;
      double v = get_num(jt, path, key);
      if (!(v > 0.0)) fail(path, std::string("tolerance '") + key + "' must be positive");
      slot = v;
    };
    ovr("eps_div", cfg.tol.eps_div);
    ovr("eps_rank", cfg.tol.eps_rank);
    ovr("eps_hn", cfg.tol.eps_hn);
    ovr("eps_a", cfg.tol.eps_a);
    ovr("eps_reg", cfg.tol.eps_reg);
    ovr("eps_min", cfg.tol.eps_min);
    ovr("tol_eq", cfg.tol.tol_eq);
    ovr("tol_frame", cfg.tol.tol_frame);
    ovr("tol_quadric", cfg.tol.tol_quadric);
    for (auto it = jt.begin(); it != jt.end(); ++it) {
      static const char* known[] = {"eps_div", "eps_rank", "eps_hn",
                                    "eps_a",   "eps_reg",  "eps_min",
                                    "tol_eq",  "tol_frame", "tol_quadric"};
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) fail(path, "unknown tolerance '" + it.key() + "'");
    }
  }

  // ---- transform chain ----
  if (j.contains("transform")) {
    const njson& jt = j.at("transform");
    if (!jt.is_array()) fail(path, "'transform' must be an array");
    for (const njson& jm : jt) {
      AmbientMap m;
      m.kind = parse_map_kind(jm.at("kind").get<std::string>(), path);
      m.dim = cfg.curve.ambient_dim();
      m.d = jm.value("d", 1.0);
      if (!(m.d > 0.0)) fail(path, "transform d must be positive");
      m.center = Vec(m.dim, 0.0);
      if (jm.contains("center")) {
        const njson& c = jm.at("center");
        if (!c.is_array() || static_cast<int>(c.size()) != m.dim)
          fail(path, "transform center must have " + std::to_string(m.dim) +
                         " entries");
        for (int i = 0; i < m.dim; ++i) m.center[i] = c[i].get<double>();
      }
      cfg.transforms.push_back(m);
    }
  }

  // ---- output ----
  if (j.contains("output")) {
    const njson& jo = j.at("output");
    cfg.output.samples = jo.value("samples", std::string());
    cfg.output.report = jo.value("report", std::string());
    cfg.output.obj = jo.value("obj", std::string());
    cfg.output.curve = jo.value("curve", std::string());
    if (jo.contains("obj_theta"))
      for (const njson& t : jo.at("obj_theta"))
        cfg.output.obj_theta.push_back(t.get<double>());
  }

  // ---- command knobs ----
  if (j.contains("quadric")) cfg.quadric_d = j.at("quadric").value("d", 1.0);
  if (j.contains("invert")) cfg.invert_d = j.at("invert").value("d", 1.0);
  if (j.contains("theorem4")) {
    cfg.theorem4_d = j.at("theorem4").value("d", 1.0);
    cfg.theorem4_fiber_angles = j.at("theorem4").value("fiber_angles", 4);
    if (cfg.theorem4_fiber_angles < 1)
      fail(path, "theorem4 fiber_angles must be positive");
  }
  if (!(cfg.quadric_d > 0.0) || !(cfg.invert_d > 0.0) || !(cfg.theorem4_d > 0.0))
    fail(path, "inversion radius d must be positive");

  return cfg;
}

int apply_cli_options(RunConfig& cfg, const CliOptions& opts,
                      const std::string& primary_artifact) {
  if (opts.seed) cfg.grid.seed = *opts.seed;
  if (!opts.out_path.empty()) {
    if (primary_artifact == "samples") cfg.output.samples = opts.out_path;
    else if (primary_artifact == "report") cfg.output.report = opts.out_path;
    else if (primary_artifact == "obj") cfg.output.obj = opts.out_path;
    else if (primary_artifact == "curve") cfg.output.curve = opts.out_path;
  }
  int workers = opts.workers ? *opts.workers
                             : static_cast<int>(std::thread::hardware_concurrency());
  return workers < 1 ? 1 : workers;
}

}  // namespace ddvv
