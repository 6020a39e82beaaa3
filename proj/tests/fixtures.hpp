#pragma once

#include "icosa/geometry.hpp"

namespace icosa::test {

inline const AutGroup& group() {
    static const AutGroup A;
    return A;
}

inline const IcoGraph& graph() {
    static const IcoGraph g(group());
    return g;
}

inline const Coord& regular() {
    static const Coord M = regular_icosahedron(graph());
    return M;
}

}  // namespace icosa::test
