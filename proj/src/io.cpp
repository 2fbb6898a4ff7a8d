// Copyright 2026 The ccx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccx/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ccx {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<CMatrix> matrix_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of matrices");
  std::vector<CMatrix> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], where + "/" + std::to_string(i)));
  return out;
}

void dump_to(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_to(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_to(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

const CPMap& Problem::map(const std::string& name) const {
  const auto it = maps.find(name);
  if (it == maps.end()) throw Error(ErrorCode::ParseError, "maps: no map named \"" + name + "\"");
  return it->second;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(where, "rows must be non-empty arrays");
  CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < j.size(); ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) fail(rw, "ragged matrix row");
    for (size_t c = 0; c < cols; ++c) {
      const Json& z = j[r][c];
      const std::string zw = rw + "/" + std::to_string(c);
      if (!z.is_array() || z.size() != 2) fail(zw, "complex entries are [re, im] pairs");
      const double re = as_double(z[0], zw + "/0");
      const double im = as_double(z[1], zw + "/1");
      if (!std::isfinite(re) || !std::isfinite(im)) fail(zw, "non-finite entry");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {re, im};
    }
  }
  return m;
}

CMatrix matrix_from_json(const Json& j, const std::string& where, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m = matrix_from_json(j, where);
  if (m.rows() != rows || m.cols() != cols) {
    fail(where, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return m;
}

Json map_to_json(const CPMap& phi) {
  Json blocks = Json::array();
  for (const CMatrix& c : phi.choi_blocks()) blocks.push_back(matrix_to_json(c));
  return {{"kind", "choi"},
          {"block_dims", phi.domain().block_dims()},
          {"hilbert_dim", phi.codomain_dim()},
          {"data", std::move(blocks)}};
}

CPMap map_from_json(const Json& j, const StarAlgebra& default_alg, int default_d, const Tolerances& tol,
                    const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  StarAlgebra alg = default_alg;
  int d = default_d;
  if (j.contains("block_dims")) alg = StarAlgebra(int_list(j["block_dims"], where + "/block_dims"));
  if (j.contains("hilbert_dim")) d = as_int(j["hilbert_dim"], where + "/hilbert_dim");
  const Json& kind = field(j, "kind", where);
  const Json& data = field(j, "data", where);
  if (!kind.is_string()) fail(where + "/kind", "expected a string");
  if (!data.is_array() || static_cast<int>(data.size()) != alg.num_blocks()) {
    fail(where + "/data", "expected one entry per algebra block");
  }
  try {
    if (kind == "choi") {
      std::vector<CMatrix> blocks;
      for (int b = 0; b < alg.num_blocks(); ++b) {
        const int n = alg.block_dim(b) * d;
        blocks.push_back(matrix_from_json(data[static_cast<size_t>(b)], where + "/data/" + std::to_string(b), n, n));
      }
      return CPMap::from_choi(alg, d, std::move(blocks), tol);
    }
    if (kind == "kraus") {
      std::vector<std::vector<CMatrix>> kraus;
      for (int b = 0; b < alg.num_blocks(); ++b) {
        const std::string bw = where + "/data/" + std::to_string(b);
        const Json& list = data[static_cast<size_t>(b)];
        if (!list.is_array()) fail(bw, "expected a list of Kraus operators");
        kraus.emplace_back();
        for (size_t k = 0; k < list.size(); ++k) {
          kraus.back().push_back(matrix_from_json(list[k], bw + "/" + std::to_string(k), alg.block_dim(b), d));
        }
      }
      return CPMap::from_kraus(alg, d, kraus, tol);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(where, e.what());
  }
  fail(where + "/kind", "unknown map kind \"" + kind.get<std::string>() + "\"");
}

Json triple_to_json(const StinespringTriple& t) {
  Json pi = Json::array();
  for (const CMatrix& p : t.pi_units) pi.push_back(matrix_to_json(p));
  return {{"dilation_dim", t.dilation_dim},
          {"multiplicities", t.multiplicities},
          {"V", matrix_to_json(t.V)},
          {"pi_units", std::move(pi)},
          {"minimal", t.minimal}};
}

StinespringTriple triple_from_json(const Json& j, const StarAlgebra& alg, const Tolerances& tol) {
  const std::string where = "triple";
  StinespringTriple t;
  t.algebra = alg;
  t.dilation_dim = as_int(field(j, "dilation_dim", where), where + "/dilation_dim");
  t.multiplicities = int_list(field(j, "multiplicities", where), where + "/multiplicities");
  t.V = matrix_from_json(field(j, "V", where), where + "/V");
  if (t.V.rows() != t.dilation_dim) fail(where + "/V", "row count differs from dilation_dim");
  t.pi_units = matrix_list(field(j, "pi_units", where), where + "/pi_units");
  if (static_cast<int>(t.pi_units.size()) != alg.basis_size()) fail(where + "/pi_units", "one matrix per unit");
  for (const CMatrix& p : t.pi_units) {
    if (p.rows() != t.dilation_dim || p.cols() != t.dilation_dim) fail(where + "/pi_units", "shape");
  }
  t.minimal = verify_minimality(t, tol);
  return t;
}

Problem parse_problem(const std::string& text) {
  Problem p;
  try {
    p.raw = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  const Json& root = p.raw;
  if (!root.is_object()) fail("/", "expected an object");
  if (root.contains("schema") && root["schema"] != kSchema) fail("/schema", "unsupported schema");

  if (root.contains("tolerances")) {
    const Json& t = root["tolerances"];
    if (!t.is_object()) fail("/tolerances", "expected an object");
    if (t.contains("psd_floor")) p.tol.psd_floor = as_double(t["psd_floor"], "/tolerances/psd_floor");
    if (t.contains("rank_cut")) p.tol.rank_cut = as_double(t["rank_cut"], "/tolerances/rank_cut");
    if (t.contains("eq_tol")) p.tol.eq_tol = as_double(t["eq_tol"], "/tolerances/eq_tol");
    if (t.contains("herm_tol")) p.tol.herm_tol = as_double(t["herm_tol"], "/tolerances/herm_tol");
    try {
      p.tol.validate();
    } catch (const std::exception& e) {
      fail("/tolerances", e.what());
    }
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("/seed", "expected a non-negative integer");
    p.seed = root["seed"].get<std::uint64_t>();
  }
  const std::vector<int> dims = int_list(field(field(root, "algebra", "/"), "block_dims", "/algebra"),
                                         "/algebra/block_dims");
  try {
    p.algebra = StarAlgebra(dims);
  } catch (const Error& e) {
    fail("/algebra/block_dims", e.what());
  }
  p.hilbert_dim = as_int(field(root, "hilbert_dim", "/"), "/hilbert_dim");
  if (p.hilbert_dim <= 0) fail("/hilbert_dim", "must be positive");

  FiniteGroup group = FiniteGroup::trivial();
  if (root.contains("group")) {
    const Json& g = root["group"];
    const Json& table = field(g, "table", "/group");
    if (!table.is_array()) fail("/group/table", "expected an array of rows");
    std::vector<std::vector<int>> rows;
    for (size_t i = 0; i < table.size(); ++i) rows.push_back(int_list(table[i], "/group/table/" + std::to_string(i)));
    if (g.contains("order") && as_int(g["order"], "/group/order") != static_cast<int>(rows.size())) {
      fail("/group/order", "does not match the table");
    }
    const int id = g.contains("identity") ? as_int(g["identity"], "/group/identity") : 0;
    try {
      group = FiniteGroup(rows, id);
    } catch (const Error& e) {
      fail("/group/table", e.what());
    }
  }
  if (root.contains("action")) {
    const Json& a = root["action"];
    const Json& kind = field(a, "kind", "/action");
    const int order = group.order();
    try {
      if (kind == "inner") {
        const Json& us = field(a, "unitaries", "/action");
        if (!us.is_array() || static_cast<int>(us.size()) != order) fail("/action/unitaries", "one per group element");
        std::vector<CMatrix> mats;
        const int n = p.algebra.ambient_dim();
        for (int i = 0; i < order; ++i) {
          mats.push_back(matrix_from_json(us[static_cast<size_t>(i)], "/action/unitaries/" + std::to_string(i), n, n));
        }
        p.action = GroupAction::inner(group, p.algebra, std::move(mats));
      } else if (kind == "general") {
        const Json& ms = field(a, "maps", "/action");
        if (!ms.is_array() || static_cast<int>(ms.size()) != order) fail("/action/maps", "one per group element");
        std::vector<CMatrix> mats;
        const int nb = p.algebra.basis_size();
        for (int i = 0; i < order; ++i) {
          mats.push_back(matrix_from_json(ms[static_cast<size_t>(i)], "/action/maps/" + std::to_string(i), nb, nb));
        }
        p.action = GroupAction::general(group, p.algebra, std::move(mats));
      } else {
        fail("/action/kind", "expected \"inner\" or \"general\"");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      fail("/action", e.what());
    }
    p.has_action = true;
  } else {
    if (group.order() != 1) fail("/action", "a non-trivial group needs an action");
    p.action = GroupAction::trivial(p.algebra);
  }
  if (root.contains("maps")) {
    const Json& maps = root["maps"];
    if (!maps.is_object()) fail("/maps", "expected an object of named maps");
    for (auto it = maps.begin(); it != maps.end(); ++it) {
      p.map_names.push_back(it.key());
      p.maps.emplace(it.key(), map_from_json(it.value(), p.algebra, p.hilbert_dim, p.tol, "/maps/" + it.key()));
    }
  }
  if (root.contains("operators")) {
    const Json& ops = root["operators"];
    if (!ops.is_object()) fail("/operators", "expected an object of named matrices");
    for (auto it = ops.begin(); it != ops.end(); ++it) {
      p.operators.emplace(it.key(), matrix_from_json(it.value(), "/operators/" + it.key()));
    }
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

}  // namespace ccx
