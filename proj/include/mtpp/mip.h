#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace mtpp {

enum class VarKind { kBinary, kContinuous };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct MipVariable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct MipTerm {
  int var = 0;
  double coef = 0.0;
};

struct MipConstraint {
  std::string name;
  std::vector<MipTerm> terms;  // sorted by variable index, no zeros
  Sense sense = Sense::kGreaterEqual;
  double rhs = 0.0;
};

// Affine expression sum(coef * var) + constant used while building models.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(double constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  static LinearExpr Var(int var, double coef = 1.0);

  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);
  LinearExpr& operator*=(double scale);
  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(double s, LinearExpr a) { return a *= s; }

  const std::map<int, double>& coefs() const { return coefs_; }
  double constant() const { return constant_; }

 private:
  std::map<int, double> coefs_;
  double constant_ = 0.0;
};

// Solver-agnostic mixed-integer model with a minimization objective.
// Variables and constraints keep their declaration order.
class MipModel {
 public:
  explicit MipModel(std::string name = "model") : name_(std::move(name)) {}

  // Throws PreconditionError on a duplicate name.
  int AddVariable(std::string name, VarKind kind, double lower = 0.0,
                  double upper = std::numeric_limits<double>::infinity());
  // Adds lhs (sense) rhs after moving constants to the right-hand side and
  // dropping zero coefficients. A constraint left without terms is not
  // stored; if its constant comparison is false the model is infeasible and
  // PreconditionError is thrown.
  void AddConstraint(std::string name, const LinearExpr& lhs, Sense sense,
                     const LinearExpr& rhs = {});
  void SetObjective(const LinearExpr& objective);
  void FixVariable(int var, double value);

  const std::string& name() const { return name_; }
  const std::vector<MipVariable>& variables() const { return variables_; }
  const std::vector<MipConstraint>& constraints() const { return constraints_; }
  const std::vector<MipTerm>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_binaries() const;
  std::int64_t num_nonzeros() const;
  // -1 if absent.
  int FindVariable(const std::string& name) const;

 private:
  std::string name_;
  std::vector<MipVariable> variables_;
  std::unordered_map<std::string, int> index_;
  std::vector<MipConstraint> constraints_;
  std::vector<MipTerm> objective_;
  double objective_constant_ = 0.0;
};

// LP-format text: Minimize / Subject To / Bounds / Binary / End sections.
// Terms are sorted by variable name, unit coefficients are implicit, numbers
// carry 12 significant digits, and long rows wrap. Identical models produce
// byte-identical text.
std::string ModelToLp(const MipModel& model);
// Writes ModelToLp(model); throws std::runtime_error on I/O failure.
void emit_lp(const MipModel& model, const std::filesystem::path& destination);

struct EnumerationResult {
  bool feasible = false;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> values;  // one per variable, for the best assignment
  std::int64_t assignments = 0;
};

// Optimizes a model by trying every assignment of its free binary variables.
// With the binaries fixed, each continuous variable is set to the smallest
// value its constraints allow, resolved in dependency order (an equality
// whose other variables are known defines its last variable; a variable with
// lower-bounding rows takes the max of them and its own lower bound). That is optimal for the models built in this project, where the
// objective and every upper-bounding row only gain from smaller continuous
// values. Throws PreconditionError if more than `max_free_binaries` binaries
// are free or a continuous variable cannot be resolved this way.
EnumerationResult SolveByBinaryEnumeration(const MipModel& model, int max_free_binaries = 24);

}  // namespace mtpp
