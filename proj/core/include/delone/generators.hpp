#pragma once

#include <map>
#include <string>
#include <vector>

#include "delone/patch.hpp"

namespace delone {

enum class GeneratorKind { lattice, dimer_lattice, cut_and_project_1d, substitution_1d };

const char* to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct LatticeSpec {
    std::vector<Vec> basis;  // one vector in d = 1, two in d = 2
    Vec origin;
};

// Which lattice points receive a partner. A point with lattice coordinates n is
// selected when n_j is divisible by moduli[j] for every j (empty = all points).
struct DimerSelection {
    std::vector<int> moduli;
    bool all() const { return moduli.empty(); }
};

// Points x = m + alpha n of Z^2 whose internal coordinate n - alpha m lies in
// [window_lo, window_hi) + phase.
struct CutProjectSpec {
    double alpha = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double phase = 0.0;
};

struct SubstitutionSpec {
    std::map<char, std::string> rules;
    std::map<char, double> lengths;  // empty: Perron eigenvector, first letter normalized to 1
    int iterations = 0;
    std::string seed;  // empty: first letter
    double origin = 0.0;
    double shift = 0.0;  // the chain is translated by -shift before windowing
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::lattice;
    Region window;
    LatticeSpec lattice;
    Vec dimer_offset;
    DimerSelection dimer_selection;
    CutProjectSpec cut_project;
    SubstitutionSpec substitution;
};

// Canonical examples.
GeneratorSpec integer_lattice_spec(int dim, const Region& window);
GeneratorSpec fibonacci_substitution_spec(const Region& window, int iterations);
GeneratorSpec fibonacci_cut_project_spec(const Region& window, double phase = 0.0);
GeneratorSpec dimer_lattice_spec(const Region& window, Vec offset, DimerSelection selection = {});

DelonePatch generate(const GeneratorSpec& spec);

// Replaces each selected point x by the pair {x, x + offset}. The window shrinks
// to the part where both partners are represented.
DelonePatch dimer_decorate(const DelonePatch& w, Vec offset, const DimerSelection& selection = {});

// Hull elements: translates by equidistributed offsets of a fundamental domain
// (lattices), equidistributed phases (cut and project), or equidistributed
// starting positions along the iterated word (substitution).
std::vector<DelonePatch> hull_samples(const GeneratorSpec& spec, int n);
// Cut and project only: one patch per given phase.
std::vector<DelonePatch> hull_samples_at_phases(const GeneratorSpec& spec, const std::vector<double>& phases);

struct ColoredGrid {
    std::vector<Vec> basis;
    int l = 1;
};

// Colors x with 1 iff it lies in a grid cell G_(l n_1, ..., l n_D) of the
// lattice grid anchored at 0 (or at the lexicographically smallest point when
// the patch does not contain 0).
DelonePatch color_grid(const DelonePatch& w, const ColoredGrid& grid);

// Symbolic helpers.
std::string substitution_word(const SubstitutionSpec& spec);
std::map<char, double> perron_lengths(const SubstitutionSpec& spec);
std::map<char, long> letter_counts(const std::string& word);

// A sub-patch with a smaller window.
DelonePatch crop(const DelonePatch& w, const Region& window);

}  // namespace delone
