#pragma once

#include <string>

#include "qosp/errors.hpp"
#include "qosp/qubo.hpp"
#include "qosp/structural.hpp"

namespace qosp {

// One assembled case study: structural model, modal solution, and the
// maximize-sense sensor-placement objective.
struct CaseStudy {
    std::string name;
    StructuralModel model;
    ModalBasis modal;
    QuboProblem mse;  // maximize
    int n_sensors = 4;
};

inline CaseStudy make_case(const std::string& name, int n_sensors = 4) {
    CaseStudy cs;
    cs.name = name;
    cs.n_sensors = n_sensors;
    if (name == "shear16") {
        cs.model = build_shear_building(16, 1e9, 625000.0);
    } else if (name == "truss19") {
        cs.model = build_warren_truss();
    } else {
        throw InvalidParameter("unknown case '" + name + "' (expected shear16 or truss19)");
    }
    cs.modal = solve_modal(cs.model);
    cs.mse = build_mse_qubo(cs.modal, cs.model);
    return cs;
}

}  // namespace qosp
