#pragma once
// Toric models of del Pezzo surfaces, Picard lattice, Kahler classes, PL functions.

#include "ghk/core.hpp"

#include <string>
#include <vector>

namespace ghk {

struct ToricModel {
    std::string name;
    std::vector<LatticeVec> rays;   // counterclockwise
    std::vector<int> blowups;       // l_i
    std::vector<std::int64_t> self_int;  // s_i = Dbar_i^2 from the fan relation

    int n() const { return static_cast<int>(rays.size()); }
    int idx(int i) const { return ((i % n()) + n()) % n(); }
    const LatticeVec& ray(int i) const { return rays[static_cast<std::size_t>(idx(i))]; }
    int total_blowups() const;
};

ToricModel make_model(const std::string& preset);
std::vector<std::string> preset_names();
// throws on fan orientation, fan relation or Noether failure
void check_model(const ToricModel& m);

// sum a_i D'_i + sum b_ij E_ij
struct DivisorClass {
    std::vector<Rat> a;
    std::vector<std::vector<Rat>> b;

    static DivisorClass zero(const ToricModel& m);
    static DivisorClass total(const ToricModel& m, int i);        // D'_i
    static DivisorClass proper(const ToricModel& m, int i);       // D_i
    static DivisorClass exceptional(const ToricModel& m, int i, int j);  // E_ij

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator*(const Rat& k) const;
    DivisorClass operator-() const { return *this * Rat(-1); }
    bool operator==(const DivisorClass& o) const { return a == o.a && b == o.b; }
    bool is_toric() const;
    bool is_integral() const;
    DivisorClass toric_part() const;
    DivisorClass exceptional_part() const;
    std::string str() const;
};

Rat intersect(const ToricModel& m, const DivisorClass& L1, const DivisorClass& L2);

struct Chern {
    DivisorClass c1;
    std::int64_t c2 = 0;
};
Chern chern(const ToricModel& m);

struct KahlerClass {
    std::vector<Rat> lambdas;
    std::vector<std::vector<Rat>> c;  // c[i][j], per-ray order as entered
};

struct ValidityReport {
    bool positive_lambda = false;      // (1)
    bool base_ample = false;           // (2)
    bool distinct_c = false;           // (3)
    bool c_in_range = false;           // (4)
    bool boundary_margin = false;      // (5)
    bool exceptional_positive = false; // omega.C > 0 on the preset's (-1)-classes
    bool shape_ok = false;
    std::vector<std::string> messages;
    bool ok() const {
        return shape_ok && positive_lambda && base_ample && distinct_c && c_in_range &&
               boundary_margin && exceptional_positive;
    }
};

ValidityReport validate_omega(const ToricModel& m, const KahlerClass& w);
// throws std::invalid_argument listing the failing conditions
void require_valid(const ToricModel& m, const KahlerClass& w);

// omega as sum lambda_i D_i + sum c_ij E_ij in the D'/E basis
DivisorClass omega_divisor(const ToricModel& m, const KahlerClass& w);
Rat fiber_exponent(const ToricModel& m, const KahlerClass& w, const DivisorClass& C);

// c values on ray i sorted ascending
std::vector<Rat> sorted_c(const KahlerClass& w, int i);

// classes C with C^2 = -1, c1.C = 1 among small effective combinations
std::vector<DivisorClass> exceptional_classes(const ToricModel& m);

struct PLFunction {
    std::vector<Rat> values;  // a_i on n_i
};

std::vector<Rat> pl_kinks(const ToricModel& m, const DivisorClass& L_toric);

// preset Kahler classes used by the CLI and tests
KahlerClass default_omega(const std::string& preset);

}  // namespace ghk
