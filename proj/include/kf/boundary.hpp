#pragma once

namespace kf {

enum class Boundary { Neumann, Dirichlet };

inline const char* to_string(Boundary bc) {
    return bc == Boundary::Neumann ? "neumann" : "dirichlet";
}

}  // namespace kf
