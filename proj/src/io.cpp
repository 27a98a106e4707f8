#include "radcal/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radcal/error.hpp"

namespace radcal {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Locate the failing byte as line:column for the diagnostic.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                    e.what());
  }
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) {
    field_error(where, "expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    field_error(where, std::string("missing field '") + key + "'");
  }
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) {
    field_error(where, "expected a number");
  }
  return j.get<double>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    field_error(where, "expected an array");
  }
  return j;
}

std::pair<double, double> pair_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    field_error(where, "expected a two-element array");
  }
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

std::vector<PixelPoint> pixel_list(const Json& j, const std::string& where) {
  std::vector<PixelPoint> pts;
  const Json& arr = array(j, where);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto [u, v] = pair_of(arr[k], where + "[" + std::to_string(k) + "]");
    pts.push_back({u, v});
  }
  return pts;
}

Json pixel_json(const std::vector<PixelPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) {
    arr.push_back({p.u, p.v});
  }
  return arr;
}

std::string dump(const Json& j) {
  return j.dump(2) + "\n";
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  }
  out << text;
}

CalibrationDataset parse_dataset(std::string_view text) {
  const Json root = parse_json(text);
  CalibrationDataset data;
  const Json& mp = array(member(root, "model_points", "dataset"), "model_points");
  for (std::size_t k = 0; k < mp.size(); ++k) {
    const auto [x, y] = pair_of(mp[k], "model_points[" + std::to_string(k) + "]");
    data.model_points.push_back({x, y});
  }
  const Json& imgs = array(member(root, "images", "dataset"), "images");
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    const std::string where = "images[" + std::to_string(i) + "]";
    ImageObservations img;
    const Json& name = member(imgs[i], "name", where);
    if (!name.is_string()) {
      field_error(where + ".name", "expected a string");
    }
    img.name = name.get<std::string>();
    img.points = pixel_list(member(imgs[i], "points", where), where + ".points");
    data.images.push_back(std::move(img));
  }
  data.validate(1);
  return data;
}

CalibrationDataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text_file(path));
}

std::string dataset_to_string(const CalibrationDataset& data) {
  Json root;
  Json mp = Json::array();
  for (const auto& m : data.model_points) {
    mp.push_back({m.x, m.y});
  }
  root["model_points"] = std::move(mp);
  Json imgs = Json::array();
  for (const auto& img : data.images) {
    imgs.push_back(Json{{"name", img.name}, {"points", pixel_json(img.points)}});
  }
  root["images"] = std::move(imgs);
  return dump(root);
}

void save_dataset(const std::filesystem::path& path, const CalibrationDataset& data) {
  write_text_file(path, dataset_to_string(data));
}

std::string result_to_string(const CalibrationResult& result) {
  Json root;
  root["model_family"] = std::string(to_string(result.family));
  root["coefficients"] = result.coefficients;
  const Intrinsics& in = result.intrinsics;
  root["intrinsics"] = Json{{"alpha", in.alpha}, {"gamma", in.gamma}, {"u0", in.u0},
                            {"beta", in.beta}, {"v0", in.v0}};
  root["r2"] = result.r2;
  root["monotone"] = result.monotone;
  const ObjectiveReport& rep = result.objective;
  root["J"] = rep.J;
  root["initial_J"] = rep.initial_J;
  root["iterations"] = rep.iterations;
  root["function_evaluations"] = rep.function_evaluations;
  root["converged"] = rep.converged;
  root["termination"] = std::string(to_string(rep.termination));
  root["excluded_points"] = rep.excluded_points;
  Json ext = Json::array();
  for (std::size_t i = 0; i < result.extrinsics.size(); ++i) {
    const Extrinsics& e = result.extrinsics[i];
    Json rot = Json::array();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        rot.push_back(e.rotation(r, c));
      }
    }
    Json item;
    item["name"] = i < result.image_names.size() ? result.image_names[i] : std::string();
    item["rotation"] = std::move(rot);
    item["translation"] = {e.translation.x(), e.translation.y(), e.translation.z()};
    item["sse"] = i < rep.per_image_sse.size() ? rep.per_image_sse[i] : 0.0;
    item["rms"] = i < rep.per_image_rms.size() ? rep.per_image_rms[i] : 0.0;
    ext.push_back(std::move(item));
  }
  root["extrinsics"] = std::move(ext);
  return dump(root);
}

namespace {

CalibrationResult result_from_json(const Json& root);

}  // namespace

CalibrationResult parse_result(std::string_view text) {
  const Json root = parse_json(text);
  try {
    return result_from_json(root);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("result file: ") + e.what());
  }
}

namespace {

CalibrationResult result_from_json(const Json& root) {
  CalibrationResult res;
  const Json& fam = member(root, "model_family", "result");
  if (!fam.is_string()) {
    field_error("model_family", "expected a string");
  }
  try {
    res.family = parse_model_family(fam.get<std::string>());
  } catch (const Error& e) {
    field_error("model_family", e.what());
  }
  const Json& coeffs = array(member(root, "coefficients", "result"), "coefficients");
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    res.coefficients.push_back(number(coeffs[k], "coefficients[" + std::to_string(k) + "]"));
  }
  if (res.coefficients.size() != coefficient_count(res.family)) {
    throw Error(ErrorCode::ShapeError, "coefficient count does not match model_family");
  }
  const Json& in = member(root, "intrinsics", "result");
  res.intrinsics.alpha = number(member(in, "alpha", "intrinsics"), "intrinsics.alpha");
  res.intrinsics.gamma = number(member(in, "gamma", "intrinsics"), "intrinsics.gamma");
  res.intrinsics.u0 = number(member(in, "u0", "intrinsics"), "intrinsics.u0");
  res.intrinsics.beta = number(member(in, "beta", "intrinsics"), "intrinsics.beta");
  res.intrinsics.v0 = number(member(in, "v0", "intrinsics"), "intrinsics.v0");
  res.r2 = number(member(root, "r2", "result"), "r2");

  ObjectiveReport& rep = res.objective;
  rep.J = number(member(root, "J", "result"), "J");
  if (root.contains("monotone")) res.monotone = root["monotone"].get<bool>();
  if (root.contains("initial_J")) rep.initial_J = number(root["initial_J"], "initial_J");
  if (root.contains("iterations")) rep.iterations = root["iterations"].get<int>();
  if (root.contains("function_evaluations")) {
    rep.function_evaluations = root["function_evaluations"].get<int>();
  }
  if (root.contains("converged")) rep.converged = root["converged"].get<bool>();
  if (root.contains("termination")) {
    rep.termination = parse_termination(root["termination"].get<std::string>());
  }
  if (root.contains("excluded_points")) {
    rep.excluded_points = root["excluded_points"].get<std::size_t>();
  }

  const Json& ext = array(member(root, "extrinsics", "result"), "extrinsics");
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const std::string where = "extrinsics[" + std::to_string(i) + "]";
    const Json& rot = array(member(ext[i], "rotation", where), where + ".rotation");
    const Json& tr = array(member(ext[i], "translation", where), where + ".translation");
    if (rot.size() != 9 || tr.size() != 3) {
      field_error(where, "rotation needs 9 entries and translation 3");
    }
    Extrinsics e;
    for (int k = 0; k < 9; ++k) {
      e.rotation(k / 3, k % 3) = number(rot[k], where + ".rotation");
    }
    for (int k = 0; k < 3; ++k) {
      e.translation(k) = number(tr[k], where + ".translation");
    }
    res.extrinsics.push_back(e);
    res.image_names.push_back(ext[i].value("name", std::string()));
    if (ext[i].contains("sse")) rep.per_image_sse.push_back(number(ext[i]["sse"], where + ".sse"));
    if (ext[i].contains("rms")) rep.per_image_rms.push_back(number(ext[i]["rms"], where + ".rms"));
  }
  return res;
}

}  // namespace

CalibrationResult load_result(const std::filesystem::path& path) {
  return parse_result(read_text_file(path));
}

void save_result(const std::filesystem::path& path, const CalibrationResult& result) {
  write_text_file(path, result_to_string(result));
}

std::vector<PixelPoint> parse_points(std::string_view text) {
  const Json root = parse_json(text);
  return pixel_list(member(root, "points", "points file"), "points");
}

std::vector<PixelPoint> load_points(const std::filesystem::path& path) {
  return parse_points(read_text_file(path));
}

std::string points_to_string(const std::vector<PixelPoint>& points) {
  Json root;
  root["points"] = pixel_json(points);
  return dump(root);
}

}  // namespace radcal
