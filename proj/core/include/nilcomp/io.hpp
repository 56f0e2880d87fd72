#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilcomp/abelian.hpp"
#include "nilcomp/cubes.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/lift.hpp"
#include "nilcomp/nilseq.hpp"
#include "nilcomp/polymap.hpp"
#include "nilcomp/unipotent.hpp"

// Plain-text formats. '#' starts a comment; blank lines are ignored.
// Sectioned files use "[name]" headers.

namespace nilcomp::io {

std::string read_file(const std::string& path);  // throws Parse if unreadable

/// "[d1,d2]" or "group: [d1,d2]"; "[]" is the trivial group.
FiniteAbelianGroup parse_group(std::string_view text);
std::string render_group(const FiniteAbelianGroup& g);

/// Lines "c1,c2 ; re ; im", one per element.
ComplexTable parse_table(const FiniteAbelianGroup& group, std::string_view text);
std::string render_table(const ComplexTable& t);

/// Optional "source: [..]" and "target: [..]" headers followed by integer
/// rows, one per target factor. Explicit groups override the headers.
AbelianHom parse_hom(std::string_view text, const std::optional<FiniteAbelianGroup>& source = std::nullopt,
                     const std::optional<FiniteAbelianGroup>& target = std::nullopt);

/// r*r rationals, row-major, separated by whitespace or commas.
UnipotentMatrix parse_matrix(std::string_view text);
std::string render_matrix(const UnipotentMatrix& g);

/// "dim degree", then dim rows of levels (0 = inactive), then optionally
/// dim rows of denominators. "lcs r" is the lower central series of r x r.
FilteredLattice parse_lattice(std::string_view text);
std::string render_lattice(const FilteredLattice& fl);

/// Sections [lattice] and [map]; [map] holds an optional "arity: n" line and
/// lines "t1,t2 ; matrix".
PolyMap parse_polymap(std::string_view text);
std::string render_polymap(const PolyMap& pm);

/// Header lines "torus: a", "finite: [..]", "arity: n", "degree: k", then
/// lines "t ; torus rationals ; finite coords".
AbelianPolyMap parse_abelian_polymap(std::string_view text);
std::string render_abelian_polymap(const AbelianPolyMap& m);

/// Sections [lattice] and [cube] with lines "vertex ; matrix".
std::pair<FilteredLattice, CubeConfig> parse_cube(std::string_view text);

/// Sections [Y], [X] (lattices) and [Psi]: "identity", "project", or rows.
FibrationDatum parse_fibration(std::string_view text);

/// Section [lattice] plus [frequencies] with dim*dim integers.
FrequencySpec parse_frequency(std::string_view text, const FilteredLattice& lattice);

/// Matrices, one per line.
std::vector<UnipotentMatrix> parse_matrix_list(std::string_view text);

using Report = std::vector<std::pair<std::string, std::string>>;
std::string render_report(const Report& report);

std::string format_double(double x);

}  // namespace nilcomp::io
