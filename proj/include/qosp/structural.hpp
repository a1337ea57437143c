#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qosp/errors.hpp"

namespace qosp {

// Linear structural model: symmetric stiffness, symmetric positive definite
// mass (diagonal for lumped formulations), one label per degree of freedom.
struct StructuralModel {
    int n_dof = 0;
    Eigen::MatrixXd stiffness;       // N x N, N/m
    Eigen::MatrixXd mass;            // N x N, kg
    std::vector<std::string> dof_labels;

    bool mass_is_diagonal() const {
        for (int i = 0; i < n_dof; ++i)
            for (int j = 0; j < n_dof; ++j)
                if (i != j && mass(i, j) != 0.0) return false;
        return true;
    }
};

// Eigenpairs of K phi = w^2 M phi: squared natural frequencies ascending,
// mode shapes as columns, mass-normalized (phi^T M phi = I).
struct ModalBasis {
    Eigen::VectorXd frequencies_sq;  // rad^2/s^2
    Eigen::MatrixXd mode_shapes;     // column i = mode i
};

namespace detail {

inline void check_symmetric(const Eigen::MatrixXd& k, double rel_tol = 1e-9) {
    const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
    if (asym > rel_tol * scale)
        throw NumericalFailure("stiffness matrix is not symmetric, max asymmetry " +
                               std::to_string(asym / scale));
}

}  // namespace detail

// Uniform shear building: tridiagonal stiffness (diagonal 2k, top story k,
// off-diagonal -k), lumped story masses on the diagonal.
inline StructuralModel build_shear_building(int n_stories, double story_stiffness,
                                            double story_mass) {
    if (n_stories < 1) throw InvalidParameter("n_stories must be >= 1");
    if (story_stiffness <= 0.0) throw InvalidParameter("story stiffness must be positive");
    if (story_mass <= 0.0) throw InvalidParameter("story mass must be positive");

    StructuralModel m;
    m.n_dof = n_stories;
    m.stiffness = Eigen::MatrixXd::Zero(n_stories, n_stories);
    m.mass = Eigen::MatrixXd::Zero(n_stories, n_stories);
    const double k = story_stiffness;
    for (int i = 0; i < n_stories; ++i) {
        m.stiffness(i, i) = (i + 1 < n_stories) ? 2.0 * k : k;
        if (i + 1 < n_stories) {
            m.stiffness(i, i + 1) = -k;
            m.stiffness(i + 1, i) = -k;
        }
        m.mass(i, i) = story_mass;
        m.dof_labels.push_back("story " + std::to_string(i + 1));
    }
    return m;
}

// Equilateral Warren truss bridge: 6 bottom-chord nodes at x = 0,2,...,10 m,
// 5 top-chord nodes at x = 1,3,...,9 m, y = sqrt(3) m; 19 members of length
// 2 m (5 bottom chords, 4 top chords, 10 diagonals); E = 215 GPa,
// A = 5e-5 m^2, rho = 7750 kg/m^3. Pin at the bottom-left node, vertical
// roller at the bottom-right node; 19 free DOFs remain out of 22.
//
// Free DOFs are numbered along the span, alternating bottom/top node
// (b0, t0, b1, t1, ..., t4, b5), horizontal before vertical at each node.
// Member mass enters through the consistent 2-D truss-bar mass matrix
// (rho*A*L/6 * [[2I, I], [I, 2I]]); this reproduces the reference ranking
// where pure end-node lumping does not.
inline StructuralModel build_warren_truss() {
    constexpr double kYoung = 215e9;
    constexpr double kArea = 5e-5;
    constexpr double kDensity = 7750.0;
    constexpr double kLength = 2.0;
    const double height = std::sqrt(3.0);

    struct Node {
        double x, y;
        std::string name;
    };
    std::vector<Node> nodes;
    for (int i = 0; i < 6; ++i) nodes.push_back({2.0 * i, 0.0, "bottom " + std::to_string(i + 1)});
    for (int i = 0; i < 5; ++i)
        nodes.push_back({2.0 * i + 1.0, height, "top " + std::to_string(i + 1)});

    std::vector<std::pair<int, int>> members;
    for (int i = 0; i < 5; ++i) members.emplace_back(i, i + 1);          // bottom chords
    for (int i = 0; i < 4; ++i) members.emplace_back(6 + i, 7 + i);      // top chords
    for (int i = 0; i < 5; ++i) {                                        // diagonals
        members.emplace_back(6 + i, i);
        members.emplace_back(6 + i, i + 1);
    }

    const int n_nodes = static_cast<int>(nodes.size());
    Eigen::MatrixXd kg = Eigen::MatrixXd::Zero(2 * n_nodes, 2 * n_nodes);
    Eigen::MatrixXd mg = Eigen::MatrixXd::Zero(2 * n_nodes, 2 * n_nodes);

    for (const auto& [a, b] : members) {
        const double dx = nodes[b].x - nodes[a].x;
        const double dy = nodes[b].y - nodes[a].y;
        const double len = std::hypot(dx, dy);
        const double cx = dx / len, cy = dy / len;
        const double ka = kYoung * kArea / len;

        const int dofs[4] = {2 * a, 2 * a + 1, 2 * b, 2 * b + 1};
        const double cc[2][2] = {{cx * cx, cx * cy}, {cx * cy, cy * cy}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double sign = (i < 2) == (j < 2) ? 1.0 : -1.0;
                kg(dofs[i], dofs[j]) += sign * ka * cc[i % 2][j % 2];
            }

        const double mu = kDensity * kArea * len / 6.0;
        for (int d = 0; d < 2; ++d) {
            mg(dofs[d], dofs[d]) += 2.0 * mu;
            mg(dofs[2 + d], dofs[2 + d]) += 2.0 * mu;
            mg(dofs[d], dofs[2 + d]) += mu;
            mg(dofs[2 + d], dofs[d]) += mu;
        }
    }

    // Span-wise DOF ordering: b0, t0, b1, t1, ..., t4, b5 with x before y.
    const int zig[] = {0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5};
    const int pinned[] = {0, 1, 2 * 5 + 1};  // b0 x, b0 y, b5 y
    std::vector<int> free_dofs;
    std::vector<std::string> labels;
    for (int nd : zig) {
        for (int c = 0; c < 2; ++c) {
            const int d = 2 * nd + c;
            if (d == pinned[0] || d == pinned[1] || d == pinned[2]) continue;
            free_dofs.push_back(d);
            labels.push_back(nodes[nd].name + (c == 0 ? " horizontal" : " vertical"));
        }
    }

    StructuralModel m;
    m.n_dof = static_cast<int>(free_dofs.size());
    m.stiffness.resize(m.n_dof, m.n_dof);
    m.mass.resize(m.n_dof, m.n_dof);
    for (int i = 0; i < m.n_dof; ++i)
        for (int j = 0; j < m.n_dof; ++j) {
            m.stiffness(i, j) = kg(free_dofs[i], free_dofs[j]);
            m.mass(i, j) = mg(free_dofs[i], free_dofs[j]);
        }
    m.dof_labels = std::move(labels);
    return m;
}

// All eigenpairs of K phi = w^2 M phi via the Cholesky transform
// L^-1 K L^-T (M = L L^T), mass-normalized, ascending. Verifies symmetry,
// positive definiteness and the eigen-residual before returning.
inline ModalBasis solve_modal(const StructuralModel& model) {
    const int n = model.n_dof;
    if (n < 1) throw InvalidParameter("empty model");
    detail::check_symmetric(model.stiffness);
    detail::check_symmetric(model.mass);

    Eigen::LLT<Eigen::MatrixXd> llt(model.mass);
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("mass matrix is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd b = l.triangularView<Eigen::Lower>().solve(model.stiffness);
    b = l.triangularView<Eigen::Lower>().solve(b.transpose().eval());
    b = 0.5 * (b + b.transpose().eval());  // restore symmetry lost to roundoff

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");

    ModalBasis modal;
    modal.frequencies_sq = es.eigenvalues();
    modal.mode_shapes =
        l.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());

    if (modal.frequencies_sq(0) <= 0.0)
        throw NumericalFailure("stiffness matrix is not positive definite, min eigenvalue " +
                               std::to_string(modal.frequencies_sq(0)));

    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd kphi = model.stiffness * modal.mode_shapes.col(i);
        const Eigen::VectorXd resid =
            kphi - modal.frequencies_sq(i) * (model.mass * modal.mode_shapes.col(i));
        const double rel = resid.norm() / kphi.norm();
        if (!(rel <= 1e-6))
            throw NumericalFailure("eigen-residual " + std::to_string(rel) + " for mode " +
                                   std::to_string(i + 1));
    }
    return modal;
}

}  // namespace qosp
