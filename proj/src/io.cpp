// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bninfo/joint_table.hpp"
#include "bninfo/validate.hpp"

namespace bninfo {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

double parse_number(const std::string& tok, int line) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) throw parse_error(line, "not a number: " + tok);
  return v;
}

struct Parser {
  std::istream& in;
  int line_no = 0;
  std::vector<std::string> pending;  // one-token-line lookahead
  int pending_line = 0;

  bool next(std::vector<std::string>& toks, int& line) {
    if (!pending.empty()) {
      toks = std::move(pending);
      pending.clear();
      line = pending_line;
      return true;
    }
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      toks = tokenize(raw);
      if (!toks.empty()) {
        line = line_no;
        return true;
      }
    }
    return false;
  }

  void push_back(std::vector<std::string> toks, int line) {
    pending = std::move(toks);
    pending_line = line;
  }
};

GaussianLocal parse_gaussian_tail(const std::string& child, const std::vector<std::string>& toks,
                                  std::size_t start, int line) {
  GaussianLocal g;
  g.child = child;
  bool have_intercept = false, have_variance = false;
  for (std::size_t k = start; k < toks.size();) {
    if (toks[k] == "intercept" && k + 1 < toks.size()) {
      g.intercept = parse_number(toks[k + 1], line);
      have_intercept = true;
      k += 2;
    } else if (toks[k] == "variance" && k + 1 < toks.size()) {
      g.variance = parse_number(toks[k + 1], line);
      have_variance = true;
      k += 2;
    } else if (toks[k] == "coef" && k + 2 < toks.size()) {
      g.coefficients.emplace_back(toks[k + 1], parse_number(toks[k + 2], line));
      k += 3;
    } else {
      throw parse_error(line, "unknown field '" + toks[k] + "' in local of " + child);
    }
  }
  if (!have_intercept || !have_variance)
    throw parse_error(line, "local of " + child + " needs intercept and variance");
  return g;
}

}  // namespace

Network parse_network(std::istream& in) {
  Parser p{in};
  std::vector<std::string> toks;
  int line = 0;

  if (!p.next(toks, line) || toks.size() != 2 || toks[0] != "format" || toks[1] != "bninfo-net/1")
    throw parse_error(line ? line : 1, "expected 'format bninfo-net/1'");

  Network net;
  if (!p.next(toks, line) || toks.size() != 2 || toks[0] != "kind")
    throw parse_error(line, "expected 'kind discrete|gaussian|clg'");
  if (toks[1] == "discrete")
    net.kind = NetworkKind::discrete;
  else if (toks[1] == "gaussian")
    net.kind = NetworkKind::gaussian;
  else if (toks[1] == "clg")
    net.kind = NetworkKind::clg;
  else
    throw parse_error(line, "unknown network kind: " + toks[1]);

  while (p.next(toks, line)) {
    const std::string& head = toks[0];
    if (head == "node") {
      if (toks.size() < 3) throw parse_error(line, "node needs a name and a kind");
      VariableMeta meta;
      meta.name = toks[1];
      if (toks[2] == "continuous") {
        if (toks.size() != 3) throw parse_error(line, "continuous node takes no levels");
        meta.kind = VarKind::continuous;
      } else if (toks[2] == "discrete") {
        meta.kind = VarKind::discrete;
        for (std::size_t k = 3; k < toks.size(); ++k) meta.levels.push_back(toks[k]);
        if (meta.levels.size() < 2) throw parse_error(line, "discrete node needs >= 2 levels");
      } else {
        throw parse_error(line, "unknown node kind: " + toks[2]);
      }
      if (net.dag.index_of(meta.name) >= 0) throw parse_error(line, "duplicate node " + meta.name);
      net.dag.nodes.push_back(std::move(meta));
    } else if (head == "arc") {
      if (toks.size() != 3) throw parse_error(line, "arc needs a parent and a child");
      if (net.dag.index_of(toks[1]) < 0 || net.dag.index_of(toks[2]) < 0)
        throw parse_error(line, "arc references an unknown node");
      net.dag.add_arc(toks[1], toks[2]);
    } else if (head == "local") {
      if (toks.size() < 2) throw parse_error(line, "local needs a node name");
      const std::string child = toks[1];
      if (net.dag.index_of(child) < 0) throw parse_error(line, "local for unknown node " + child);
      if (net.locals.count(child)) throw parse_error(line, "duplicate local for " + child);

      if (toks.size() > 2 && toks[2] == "intercept") {
        net.locals.emplace(child, parse_gaussian_tail(child, toks, 2, line));
        continue;
      }

      // Block local: CPT (prob rows) or CLG (component rows), closed by 'end'.
      std::vector<std::string> parents, dparents, cparents;
      for (std::size_t k = 2; k < toks.size();) {
        if (toks[k] == "parents") {
          for (++k; k < toks.size() && toks[k] != "dparents" && toks[k] != "cparents"; ++k)
            parents.push_back(toks[k]);
        } else if (toks[k] == "dparents") {
          for (++k; k < toks.size() && toks[k] != "cparents" && toks[k] != "parents"; ++k)
            dparents.push_back(toks[k]);
        } else if (toks[k] == "cparents") {
          for (++k; k < toks.size() && toks[k] != "dparents" && toks[k] != "parents"; ++k)
            cparents.push_back(toks[k]);
        } else {
          throw parse_error(line, "unknown field '" + toks[k] + "' in local of " + child);
        }
      }
      for (const auto& list : {parents, dparents, cparents})
        for (const auto& name : list)
          if (net.dag.index_of(name) < 0)
            throw parse_error(line, "local of " + child + " references unknown node " + name);

      std::vector<std::vector<std::string>> rows;
      std::vector<int> row_lines;
      int rl = 0;
      std::vector<std::string> rtoks;
      bool closed = false;
      while (p.next(rtoks, rl)) {
        if (rtoks[0] == "end") {
          closed = true;
          break;
        }
        if (rtoks[0] != "prob" && rtoks[0] != "component")
          throw parse_error(rl, "expected 'prob', 'component' or 'end' in local of " + child);
        rows.push_back(rtoks);
        row_lines.push_back(rl);
      }
      if (!closed) throw parse_error(p.line_no, "local of " + child + " not closed by 'end'");
      if (rows.empty()) throw parse_error(line, "empty local block for " + child);

      const int child_id = net.dag.index_of(child);
      if (rows[0][0] == "prob") {
        if (!parents.empty() && (!dparents.empty() || !cparents.empty()))
          throw parse_error(line, "CPT local of " + child + " takes only 'parents'");
        Cpt cpt;
        cpt.child = child;
        cpt.parents = parents;
        cpt.rows = net.dag.nodes[child_id].level_count();
        std::size_t q = 1;
        for (const auto& pname : parents)
          q *= static_cast<std::size_t>(net.dag.nodes[net.dag.index_of(pname)].level_count());
        cpt.cols = static_cast<int>(q);
        cpt.table.assign(static_cast<std::size_t>(cpt.rows) * cpt.cols, 0.0);
        std::vector<bool> seen(static_cast<std::size_t>(cpt.rows), false);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const auto& row = rows[r];
          if (row[0] != "prob") throw parse_error(row_lines[r], "expected 'prob' row");
          if (row.size() != 2 + q)
            throw parse_error(row_lines[r], "prob row needs a level and " + std::to_string(q) +
                                                " probabilities");
          const int level = net.dag.nodes[child_id].level_index(row[1]);
          if (level < 0) throw parse_error(row_lines[r], "unknown level " + row[1]);
          if (seen[level]) throw parse_error(row_lines[r], "duplicate prob row for " + row[1]);
          seen[level] = true;
          for (std::size_t j = 0; j < q; ++j)
            cpt.at(level, static_cast<int>(j)) = parse_number(row[2 + j], row_lines[r]);
        }
        for (int k = 0; k < cpt.rows; ++k)
          if (!seen[k])
            throw parse_error(line, "missing prob row for level " +
                                        net.dag.nodes[child_id].levels[k] + " of " + child);
        net.locals.emplace(child, std::move(cpt));
      } else {
        if (!parents.empty())
          throw parse_error(line, "CLG local of " + child + " takes 'dparents'/'cparents'");
        ClgLocal local;
        local.child = child;
        local.discrete_parents = dparents;
        local.continuous_parents = cparents;
        std::vector<VariableMeta> dvars;
        std::vector<int> dlevels;
        for (const auto& pname : dparents) {
          dvars.push_back(net.dag.nodes[net.dag.index_of(pname)]);
          dlevels.push_back(dvars.back().level_count());
        }
        const std::size_t n_configs = table_cells(dvars);
        local.components.assign(n_configs, GaussianLocal{});
        std::vector<bool> seen(n_configs, false);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const auto& row = rows[r];
          if (row[0] != "component") throw parse_error(row_lines[r], "expected 'component' row");
          if (row.size() < 1 + dparents.size())
            throw parse_error(row_lines[r], "component row needs one level per discrete parent");
          std::vector<int> config(dparents.size());
          for (std::size_t k = 0; k < dparents.size(); ++k) {
            config[k] = dvars[k].level_index(row[1 + k]);
            if (config[k] < 0)
              throw parse_error(row_lines[r], "unknown level " + row[1 + k] + " of " + dparents[k]);
          }
          const std::size_t cfg = Cpt::config_index(dlevels, config);
          if (seen[cfg]) throw parse_error(row_lines[r], "duplicate component row");
          seen[cfg] = true;
          local.components[cfg] =
              parse_gaussian_tail(child, row, 1 + dparents.size(), row_lines[r]);
        }
        for (std::size_t cfg = 0; cfg < n_configs; ++cfg)
          if (!seen[cfg]) throw parse_error(line, "missing component row in local of " + child);
        net.locals.emplace(child, std::move(local));
      }
    } else {
      throw parse_error(line, "unknown directive: " + head);
    }
  }
  return net;
}

Network load_network(const std::string& path) {
  Network net = load_network_unvalidated(path);
  const ValidationReport rep = validate_network(net);
  if (!rep.ok()) throw error(path + ": invalid network:\n" + rep.to_string());
  return net;
}

Network load_network_unvalidated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  return parse_network(in);
}

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

void serialize_gaussian_tail(std::ostream& os, const GaussianLocal& g) {
  os << "intercept " << format_double(g.intercept) << " variance " << format_double(g.variance);
  for (const auto& [pname, beta] : g.coefficients)
    os << " coef " << pname << " " << format_double(beta);
}

void serialize_cpt(std::ostream& os, const Network& net, const Cpt& cpt) {
  os << "local " << cpt.child;
  if (!cpt.parents.empty()) {
    os << " parents";
    for (const auto& pname : cpt.parents) os << " " << pname;
  }
  os << "\n";
  const auto& levels = net.dag.nodes[net.dag.index_of(cpt.child)].levels;
  for (int k = 0; k < cpt.rows; ++k) {
    os << "  prob " << levels[k];
    for (int j = 0; j < cpt.cols; ++j) os << " " << format_double(cpt.at(k, j));
    os << "\n";
  }
  os << "end\n";
}

void serialize_clg(std::ostream& os, const Network& net, const ClgLocal& local) {
  os << "local " << local.child;
  if (!local.discrete_parents.empty()) {
    os << " dparents";
    for (const auto& pname : local.discrete_parents) os << " " << pname;
  }
  if (!local.continuous_parents.empty()) {
    os << " cparents";
    for (const auto& pname : local.continuous_parents) os << " " << pname;
  }
  os << "\n";
  std::vector<VariableMeta> dvars;
  for (const auto& pname : local.discrete_parents)
    dvars.push_back(net.dag.nodes[net.dag.index_of(pname)]);
  const JointTable index(dvars);
  for (std::size_t cfg = 0; cfg < local.components.size(); ++cfg) {
    os << "  component";
    const std::vector<int> config = index.config_of(cfg);
    for (std::size_t k = 0; k < dvars.size(); ++k) os << " " << dvars[k].levels[config[k]];
    os << " ";
    serialize_gaussian_tail(os, local.components[cfg]);
    os << "\n";
  }
  os << "end\n";
}

}  // namespace

std::string serialize_network(const Network& net) {
  std::ostringstream os;
  os << "format bninfo-net/1\n";
  os << "kind " << to_string(net.kind) << "\n\n";
  for (const auto& meta : net.dag.nodes) {
    os << "node " << meta.name << " " << to_string(meta.kind);
    for (const auto& level : meta.levels) os << " " << level;
    os << "\n";
  }
  auto arcs = net.dag.arcs;
  std::sort(arcs.begin(), arcs.end());
  if (!arcs.empty()) os << "\n";
  for (const auto& [p, c] : arcs)
    os << "arc " << net.dag.nodes[p].name << " " << net.dag.nodes[c].name << "\n";
  os << "\n";
  for (const auto& meta : net.dag.nodes) {
    const LocalDist& local = net.local(meta.name);
    if (const auto* cpt = std::get_if<Cpt>(&local)) {
      serialize_cpt(os, net, *cpt);
    } else if (const auto* g = std::get_if<GaussianLocal>(&local)) {
      os << "local " << meta.name << " ";
      serialize_gaussian_tail(os, *g);
      os << "\n";
    } else {
      serialize_clg(os, net, std::get<ClgLocal>(local));
    }
  }
  return os.str();
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << serialize_network(net);
}

Dataset parse_dataset(std::istream& in, const std::vector<VariableMeta>& vars) {
  std::string header;
  if (!std::getline(in, header)) throw parse_error(1, "empty dataset");
  const char delim = header.find(',') != std::string::npos ? ',' : ' ';

  auto split = [&](const std::string& raw) {
    std::vector<std::string> out;
    if (delim == ',') {
      std::string field;
      std::istringstream is(raw);
      while (std::getline(is, field, ',')) {
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.erase(0, 1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\r' || field.back() == '\t'))
          field.pop_back();
        out.push_back(field);
      }
    } else {
      std::istringstream is(raw);
      std::string tok;
      while (is >> tok) out.push_back(tok);
    }
    return out;
  };

  Dataset data;
  for (const auto& name : split(header)) {
    bool found = false;
    for (const auto& var : vars)
      if (var.name == name) {
        data.columns.push_back(var);
        found = true;
        break;
      }
    if (!found) throw parse_error(1, "unknown column " + name);
  }

  std::string raw;
  int line = 1;
  while (std::getline(in, raw)) {
    ++line;
    const auto fields = split(raw);
    if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
    if (fields.size() != data.columns.size())
      throw parse_error(line, "expected " + std::to_string(data.columns.size()) + " fields");
    std::vector<Cell> row(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (data.columns[k].kind == VarKind::discrete) {
        const int level = data.columns[k].level_index(fields[k]);
        if (level < 0)
          throw parse_error(line, "unknown level '" + fields[k] + "' for " + data.columns[k].name);
        row[k] = level;
      } else {
        row[k] = parse_number(fields[k], line);
      }
    }
    data.rows.push_back(std::move(row));
  }
  if (data.rows.empty()) throw parse_error(line, "dataset has no rows");
  return data;
}

Dataset load_dataset(const std::string& path, const std::vector<VariableMeta>& vars) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  return parse_dataset(in, vars);
}

std::string serialize_dataset(const Dataset& data) {
  std::ostringstream os;
  for (std::size_t k = 0; k < data.columns.size(); ++k) {
    if (k) os << ",";
    os << data.columns[k].name;
  }
  os << "\n";
  for (const auto& row : data.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) os << ",";
      if (data.columns[k].kind == VarKind::discrete)
        os << data.columns[k].levels[std::get<int>(row[k])];
      else
        os << format_double(std::get<double>(row[k]));
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace bninfo
