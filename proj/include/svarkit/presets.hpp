#pragma once

// Built-in data-generating processes for the synthetic-data generator.
// paper_system11 reproduces the published 4-variable AB system (current
// account ratio, native and foreign dependency rates, output growth) with
// its lag matrix recovered from the published impact sequence.

#include <Eigen/Dense>

namespace svarkit::presets {

// contemporaneous-relations matrix of the published system
Eigen::MatrixXd system11_a();
// shock loading matrix of the published system
Eigen::MatrixXd system11_b();
// lag matrix recovered as impact1 * impact0^{-1} from the published sequence
Eigen::MatrixXd system11_a1();

// published impact matrices (responses x shocks) at horizons 0 and 1
Eigen::MatrixXd system11_impact0();
Eigen::MatrixXd system11_impact1();

// simple stable recursive benchmark DGP, K = 4
Eigen::MatrixXd recursive_a();
Eigen::MatrixXd recursive_b();
Eigen::MatrixXd recursive_a1();

}  // namespace svarkit::presets
