#pragma once

#include <optional>
#include <string>

#include "sdfeas/ipm.hpp"
#include "sdfeas/problem.hpp"
#include "sdfeas/sdlcp.hpp"

namespace sdfeas::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// {"n", "m", "A": [matrix...], "b"}; each matrix is a flat row-major list of
/// n² numbers or a list of n rows.
Lsdfp parse_problem_json(const std::string& text);
std::string problem_to_json(const Lsdfp& p);

/// SDPA sparse format restricted to one dense block. The objective vector
/// becomes b, F_1..F_m become A_1..A_m; a nonzero F_0 is rejected with NonZeroCost.
Lsdfp parse_sdpa(const std::string& text);

enum class Format { Json, Sdpa };
Lsdfp read_problem(const std::string& path, Format format);

Witness parse_witness_json(const std::string& text);
std::string witness_to_json(const Witness& w);

/// {"n", "B": [B0, B1, ..., Bl]}
Lmi parse_lmi_json(const std::string& text);

std::string solution_to_json(const std::string& status, const std::optional<Solution>& sol, int iters,
                             double final_ratio);

inline constexpr const char* kTraceHeader = "k,mu,alpha_bar,alpha1,alpha2,delta,tau,kappa,norm_r,norm_s,gamma,nbr_dist,ratio";

std::string trace_to_csv(const IterTrace& trace);
IterTrace parse_trace_csv(const std::string& text);

/// Rows of Â and B̂ in svec coordinates.
std::string ops_to_json(const SdlcpOps& ops);

}  // namespace sdfeas::io
