#pragma once

#include <string>
#include <vector>

#include "riskaudit/scoring.hpp"

namespace riskaudit {

/// Oil-leak impact per event in liters: [0,0.1], (0.1,1], (1,10], (10,inf).
OrdinalScale problem_u_impact_scale();
/// Leak frequency in events per year: yearly [0,4], monthly (4,26],
/// weekly (26,182.5], daily (182.5,inf).
OrdinalScale problem_u_frequency_scale();

/// Severity S1..S3, exposure E1..E4, controllability C1..C3, summed;
/// <=6 QM, 7 A, 8 B, 9 C, 10 D.
RiskScheme hara_scheme();
/// Severity, occurrence, detection 1..10 multiplied into an RPN; no categories.
RiskScheme fmea_scheme();
/// Impact x frequency over the two scales above.
RiskScheme problem_u_scheme();
/// 5 frequency rows (E..A, per year) x 4 severity columns (IV..I, lb of fuel
/// per event) colored LOW / MEDIUM / HIGH.
MatrixColoring mil882c_matrix();

AnyScheme preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace riskaudit
