#include "mtpp/mip.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mtpp/errors.h"
#include "mtpp/graph_io.h"

namespace mtpp {

LinearExpr LinearExpr::Var(int var, double coef) {
  LinearExpr e;
  e.coefs_[var] = coef;
  return e;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [var, coef] : other.coefs_) coefs_[var] += coef;
  constant_ += other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) {
  for (const auto& [var, coef] : other.coefs_) coefs_[var] -= coef;
  constant_ -= other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double scale) {
  for (auto& [var, coef] : coefs_) coef *= scale;
  constant_ *= scale;
  return *this;
}

int MipModel::AddVariable(std::string name, VarKind kind, double lower, double upper) {
  if (index_.contains(name)) {
    throw PreconditionError("duplicate MIP variable '" + name + "'");
  }
  const int id = num_variables();
  index_.emplace(name, id);
  variables_.push_back({std::move(name), kind, lower, upper});
  return id;
}

namespace {

std::vector<MipTerm> CollectTerms(const LinearExpr& expr, int num_vars) {
  std::vector<MipTerm> terms;
  for (const auto& [var, coef] : expr.coefs()) {
    if (var < 0 || var >= num_vars) {
      throw PreconditionError("MIP term references undeclared variable " + std::to_string(var));
    }
    if (coef != 0.0) terms.push_back({var, coef});
  }
  return terms;
}

bool Holds(double lhs, Sense sense, double rhs, double tol) {
  switch (sense) {
    case Sense::kLessEqual:
      return lhs <= rhs + tol;
    case Sense::kGreaterEqual:
      return lhs >= rhs - tol;
    case Sense::kEqual:
      return std::abs(lhs - rhs) <= tol;
  }
  return false;
}

}  // namespace

void MipModel::AddConstraint(std::string name, const LinearExpr& lhs, Sense sense,
                             const LinearExpr& rhs) {
  const LinearExpr row = lhs - rhs;
  MipConstraint c{std::move(name), CollectTerms(row, num_variables()), sense,
                  -row.constant()};
  if (c.rhs == 0.0) c.rhs = 0.0;  // no negative zero in output
  if (c.terms.empty()) {
    if (!Holds(0.0, sense, c.rhs, 1e-12)) {
      throw PreconditionError("constraint '" + c.name + "' is infeasible after substitution");
    }
    return;
  }
  constraints_.push_back(std::move(c));
}

void MipModel::SetObjective(const LinearExpr& objective) {
  objective_ = CollectTerms(objective, num_variables());
  objective_constant_ = objective.constant();
}

void MipModel::FixVariable(int var, double value) {
  variables_.at(var).lower = value;
  variables_.at(var).upper = value;
}

int MipModel::num_binaries() const {
  return static_cast<int>(std::count_if(variables_.begin(), variables_.end(), [](const MipVariable& v) {
    return v.kind == VarKind::kBinary;
  }));
}

std::int64_t MipModel::num_nonzeros() const {
  std::int64_t total = 0;
  for (const MipConstraint& c : constraints_) total += static_cast<std::int64_t>(c.terms.size());
  return total;
}

int MipModel::FindVariable(const std::string& name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

// ---------------------------------------------------------------------------
// LP text

namespace {

constexpr std::size_t kMaxLineWidth = 200;

std::string FormatNumber(double x) {
  if (x == 0.0) return "0";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}
  void Begin(const std::string& head) {
    line_ = head;
  }
  void Append(const std::string& token) {
    if (line_.size() + token.size() > kMaxLineWidth) {
      out_ << line_ << "\n";
      line_ = "   ";
    }
    line_ += token;
  }
  void End() { out_ << line_ << "\n"; }

 private:
  std::ostringstream& out_;
  std::string line_;
};

void WriteTerms(LineWriter& writer, const MipModel& model, std::vector<MipTerm> terms) {
  const auto& vars = model.variables();
  std::sort(terms.begin(), terms.end(), [&](const MipTerm& a, const MipTerm& b) {
    return vars[a.var].name < vars[b.var].name;
  });
  bool first = true;
  for (const MipTerm& t : terms) {
    std::string token;
    const bool negative = t.coef < 0.0;
    if (first) {
      token = negative ? " - " : " ";
    } else {
      token = negative ? " - " : " + ";
    }
    const double magnitude = std::abs(t.coef);
    if (magnitude != 1.0) token += FormatNumber(magnitude) + " ";
    token += vars[t.var].name;
    writer.Append(token);
    first = false;
  }
  if (first) writer.Append(" 0");
}

const char* SenseText(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "?";
}

}  // namespace

std::string ModelToLp(const MipModel& model) {
  std::ostringstream out;
  LineWriter writer(out);
  out << "\\ Problem: " << model.name() << "\n";
  out << "Minimize\n";
  writer.Begin(" obj:");
  WriteTerms(writer, model, model.objective());
  writer.End();

  out << "Subject To\n";
  for (const MipConstraint& c : model.constraints()) {
    writer.Begin(" " + c.name + ":");
    WriteTerms(writer, model, c.terms);
    writer.Append(std::string(" ") + SenseText(c.sense) + " " + FormatNumber(c.rhs));
    writer.End();
  }

  out << "Bounds\n";
  for (const MipVariable& v : model.variables()) {
    const bool binary = v.kind == VarKind::kBinary;
    const double default_upper = binary ? 1.0 : std::numeric_limits<double>::infinity();
    if (v.lower == 0.0 && v.upper == default_upper) continue;
    if (v.lower == v.upper) {
      out << " " << v.name << " = " << FormatNumber(v.lower) << "\n";
    } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << " " << v.name << " free\n";
    } else {
      const std::string lo = std::isinf(v.lower) ? "-inf" : FormatNumber(v.lower);
      const std::string hi = std::isinf(v.upper) ? "+inf" : FormatNumber(v.upper);
      out << " " << lo << " <= " << v.name << " <= " << hi << "\n";
    }
  }

  out << "Binary\n";
  for (const MipVariable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) out << " " << v.name << "\n";
  }
  out << "End\n";
  return out.str();
}

void emit_lp(const MipModel& model, const std::filesystem::path& destination) {
  WriteTextFile(destination, ModelToLp(model));
}

// ---------------------------------------------------------------------------
// Exhaustive optimization over binaries

namespace {

struct ResolutionStep {
  int var;
  double lower;                   // variable's own lower bound (Max steps)
  std::vector<int> constraints;   // defining equality (one) or lower-bounding rows
  bool equality;
};

double RowActivityWithout(const MipConstraint& c, const std::vector<double>& x, int skip,
                          double* own_coef) {
  double sum = 0.0;
  for (const MipTerm& t : c.terms) {
    if (t.var == skip) {
      *own_coef = t.coef;
    } else {
      sum += t.coef * x[t.var];
    }
  }
  return sum;
}

std::vector<ResolutionStep> PlanResolution(const MipModel& model) {
  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  const int nv = model.num_variables();
  std::vector<std::vector<int>> rows_of(nv);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    for (const MipTerm& t : rows[r].terms) rows_of[t.var].push_back(r);
  }
  std::vector<char> known(nv, 0);
  int unresolved = 0;
  for (int v = 0; v < nv; ++v) {
    if (vars[v].kind == VarKind::kBinary) {
      known[v] = 1;
    } else {
      ++unresolved;
    }
  }
  auto others_known = [&](int r, int self) {
    for (const MipTerm& t : rows[r].terms) {
      if (t.var != self && !known[t.var]) return false;
    }
    return true;
  };
  auto coef_of = [&](int r, int self) {
    for (const MipTerm& t : rows[r].terms) {
      if (t.var == self) return t.coef;
    }
    return 0.0;
  };

  std::vector<ResolutionStep> plan;
  while (unresolved > 0) {
    bool progress = false;
    for (int v = 0; v < nv; ++v) {
      if (known[v]) continue;
      int defining = -1;
      bool has_equality = false;
      std::vector<int> lower_rows;
      bool lower_ready = true;
      for (int r : rows_of[v]) {
        const double a = coef_of(r, v);
        if (rows[r].sense == Sense::kEqual) {
          has_equality = true;
          if (defining < 0 && others_known(r, v)) defining = r;
        } else if ((rows[r].sense == Sense::kGreaterEqual) == (a > 0.0)) {
          lower_rows.push_back(r);
          if (!others_known(r, v)) lower_ready = false;
        }
      }
      if (defining >= 0) {
        plan.push_back({v, 0.0, {defining}, true});
      } else if (lower_ready && (!has_equality || !lower_rows.empty())) {
        plan.push_back({v, vars[v].lower, std::move(lower_rows), false});
      } else {
        continue;
      }
      known[v] = 1;
      --unresolved;
      progress = true;
    }
    if (!progress) {
      throw PreconditionError("model '" + model.name() +
                              "' has continuous variables that cannot be resolved from the binaries");
    }
  }
  return plan;
}

}  // namespace

EnumerationResult SolveByBinaryEnumeration(const MipModel& model, int max_free_binaries) {
  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  std::vector<int> free_binaries;
  std::vector<double> x(model.num_variables(), 0.0);
  for (int v = 0; v < model.num_variables(); ++v) {
    if (vars[v].kind != VarKind::kBinary) continue;
    const double lo = std::ceil(vars[v].lower);
    const double hi = std::floor(std::min(vars[v].upper, 1.0));
    if (lo > hi) return {};
    if (lo < hi) {
      free_binaries.push_back(v);
    } else {
      x[v] = lo;
    }
  }
  if (static_cast<int>(free_binaries.size()) > max_free_binaries) {
    throw PreconditionError("model '" + model.name() + "' has " +
                            std::to_string(free_binaries.size()) +
                            " free binaries; enumeration limit is " +
                            std::to_string(max_free_binaries));
  }
  const std::vector<ResolutionStep> plan = PlanResolution(model);

  EnumerationResult best;
  const std::uint64_t count = 1ULL << free_binaries.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    ++best.assignments;
    for (std::size_t i = 0; i < free_binaries.size(); ++i) {
      x[free_binaries[i]] = static_cast<double>((mask >> i) & 1ULL);
    }
    for (const ResolutionStep& step : plan) {
      double value = step.equality ? 0.0 : step.lower;
      for (int r : step.constraints) {
        double a = 0.0;
        const double rest = RowActivityWithout(rows[r], x, step.var, &a);
        const double bound = (rows[r].rhs - rest) / a;
        value = step.equality ? bound : std::max(value, bound);
      }
      x[step.var] = value;
    }
    bool feasible = true;
    for (int v = 0; v < model.num_variables() && feasible; ++v) {
      const double tol = 1e-9 * (1.0 + std::abs(x[v]));
      if (x[v] < vars[v].lower - tol || x[v] > vars[v].upper + tol) feasible = false;
    }
    for (const MipConstraint& c : rows) {
      if (!feasible) break;
      double lhs = 0.0;
      double scale = std::abs(c.rhs);
      for (const MipTerm& t : c.terms) {
        lhs += t.coef * x[t.var];
        scale += std::abs(t.coef * x[t.var]);
      }
      if (!Holds(lhs, c.sense, c.rhs, 1e-9 * (1.0 + scale))) feasible = false;
    }
    if (!feasible) continue;
    double objective = model.objective_constant();
    for (const MipTerm& t : model.objective()) objective += t.coef * x[t.var];
    if (!best.feasible || objective < best.objective) {
      best.feasible = true;
      best.objective = objective;
      best.values = x;
    }
  }
  return best;
}

}  // namespace mtpp
