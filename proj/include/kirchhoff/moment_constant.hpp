#pragma once

namespace kirchhoff {

/// Families of one-dimensional moment integrals used throughout the library:
///   L: singular-weight integrals over s in (0,1)
///   S: half-interval moments of the ground state
///   R: full-interval moments of the ground state against x^k
///   M: full-interval moments of the ground state against (1-x)^k
enum class Kind { L, S, R, M };

/// How a value was produced.
enum class Method { closed_form, recursion, quadrature };

struct MomentConstant {
    Kind kind;
    double k;      // first index (exponent on the weight)
    double d;      // second index (exponent on the profile / on s)
    double p;      // ground-state exponent; 0 for L (which does not depend on it)
    double value;
    Method method;
};

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::L: return "L";
        case Kind::S: return "S";
        case Kind::R: return "R";
        case Kind::M: return "M";
    }
    return "?";
}

inline const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::recursion:   return "recursion";
        case Method::quadrature:  return "quadrature";
    }
    return "?";
}

}  // namespace kirchhoff
