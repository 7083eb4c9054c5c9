#include "torsionforge/gram.hpp"

#include "torsionforge/hyptrig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace torsionforge {

namespace {
constexpr double pi = std::numbers::pi;

void require_finite6(const std::array<Complex, 6>& u, const char* what) {
    for (const Complex& z : u) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidInputError(std::string(what) + ": non-finite entry");
    }
}
}  // namespace

int pair_index(int j, int k) {
    if (j > k) std::swap(j, k);
    for (int i = 0; i < 6; ++i)
        if (kPairs[i].first == j && kPairs[i].second == k) return i;
    throw InvalidInputError("pair_index: indices must be a pair in {1,2,3,4}");
}

std::pair<int, int> complementary_pair(int j, int k) {
    std::pair<int, int> out{0, 0};
    for (int v = 1; v <= 4; ++v) {
        if (v == j || v == k) continue;
        if (out.first == 0)
            out.first = v;
        else
            out.second = v;
    }
    return out;
}

TetShape TetShape::from_angles(const std::array<double, 6>& alpha) {
    TetShape s;
    s.kind = ShapeKind::Angles;
    for (int i = 0; i < 6; ++i) s.u[i] = Complex(0.0, alpha[i]);
    require_finite6(s.u, "TetShape");
    return s;
}

TetShape TetShape::from_lengths(const std::array<double, 6>& lengths) {
    TetShape s;
    s.kind = ShapeKind::Lengths;
    for (int i = 0; i < 6; ++i) {
        if (!(lengths[i] > 0.0))
            throw InvalidShapeError("TetShape: lengths must be positive");
        s.u[i] = Complex(lengths[i], 0.0);
    }
    require_finite6(s.u, "TetShape");
    return s;
}

TetShape TetShape::mixed(const std::array<Complex, 6>& u) {
    TetShape s;
    s.kind = ShapeKind::Mixed;
    s.u = u;
    require_finite6(s.u, "TetShape");
    return s;
}

double TetShape::angle(int j, int k) const {
    if (kind != ShapeKind::Angles) throw InvalidInputError("TetShape::angle: kind is not Angles");
    return u[pair_index(j, k)].imag();
}

double TetShape::length(int j, int k) const {
    if (kind != ShapeKind::Lengths) throw InvalidInputError("TetShape::length: kind is not Lengths");
    return u[pair_index(j, k)].real();
}

std::array<double, 6> TetShape::angles() const {
    std::array<double, 6> a{};
    for (int i = 0; i < 6; ++i) a[i] = angle(kPairs[i].first, kPairs[i].second);
    return a;
}

std::array<double, 6> TetShape::lengths() const {
    std::array<double, 6> l{};
    for (int i = 0; i < 6; ++i) l[i] = length(kPairs[i].first, kPairs[i].second);
    return l;
}

Mat4 gram(const TetShape& shape) {
    require_finite6(shape.u, "gram");
    Mat4 g = Mat4::Identity();
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        const Complex v = -std::cosh(shape.u[i]);
        g(j - 1, k - 1) = v;
        g(k - 1, j - 1) = v;
    }
    return g;
}

Complex gram_cofactor(const Mat4& g, int s, int t) {
    if (s < 1 || s > 4 || t < 1 || t > 4)
        throw InvalidInputError("gram_cofactor: indices out of range");
    Eigen::Matrix3cd m;
    int r = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == s - 1) continue;
        int c = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == t - 1) continue;
            m(r, c++) = g(i, j);
        }
        ++r;
    }
    const double sign = ((s + t) % 2 == 0) ? 1.0 : -1.0;
    return sign * m.determinant();
}

HyperidealCheck validate_hyperideal(const TetShape& shape) {
    HyperidealCheck out;
    if (shape.kind != ShapeKind::Angles) {
        out.messages.push_back("shape kind is not angles");
        return out;
    }
    bool range_ok = true;
    for (int i = 0; i < 6; ++i) {
        const double a = shape.u[i].imag();
        if (!(a > 0.0 && a < pi)) {
            range_ok = false;
            std::ostringstream os;
            os << "alpha_" << kPairs[i].first << kPairs[i].second << " = " << a
               << " outside (0,pi)";
            out.messages.push_back(os.str());
        }
    }
    for (int v = 1; v <= 4; ++v) {
        double sum = 0.0;
        for (int i = 0; i < 6; ++i) {
            const auto [j, k] = kPairs[i];
            if (j != v && k != v) sum += shape.u[i].imag();
        }
        if (!(sum < pi)) {
            out.failing_vertices.push_back(v);
            std::ostringstream os;
            os << "vertex " << v << ": incident angle sum " << sum << " >= pi";
            out.messages.push_back(os.str());
        }
    }
    out.valid = range_ok && out.failing_vertices.empty();
    return out;
}

namespace {

// The cofactor-ratio appearing in both conversions, as a complex function of
// the Gram argument.  Principal square root; returns G^st / sqrt(G^ss G^tt).
std::array<Complex, 6> cofactor_ratios(const std::array<Complex, 6>& u) {
    TetShape s = TetShape::mixed(u);
    const Mat4 g = gram(s);
    std::array<Complex, 6> out{};
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        const auto [cs, ct] = complementary_pair(j, k);
        const Complex gst = gram_cofactor(g, cs, ct);
        const Complex gss = gram_cofactor(g, cs, cs);
        const Complex gtt = gram_cofactor(g, ct, ct);
        out[i] = gst / std::sqrt(gss * gtt);
    }
    return out;
}

}  // namespace

TetShape lengths_from_angles(const TetShape& shape) {
    if (shape.kind != ShapeKind::Angles)
        throw InvalidInputError("lengths_from_angles: shape kind must be angles");
    const HyperidealCheck chk = validate_hyperideal(shape);
    if (!chk.valid) {
        std::string msg = "lengths_from_angles: shape is not hyperideal";
        for (const auto& m : chk.messages) msg += "; " + m;
        throw InvalidShapeError(msg);
    }
    const Mat4 g = gram(shape);
    std::array<double, 6> lengths{};
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        const auto [cs, ct] = complementary_pair(j, k);
        const double gst = gram_cofactor(g, cs, ct).real();
        const double gss = gram_cofactor(g, cs, cs).real();
        const double gtt = gram_cofactor(g, ct, ct).real();
        // for real hyperideal data both diagonal cofactors are negative
        if (!(gss < 0.0 && gtt < 0.0)) {
            std::ostringstream os;
            os << "lengths_from_angles: diagonal cofactors G^" << cs << cs << ", G^" << ct << ct
               << " not both negative (" << gss << ", " << gtt << ")";
            throw InvalidShapeError(os.str());
        }
        const double ratio = gst / std::sqrt(gss * gtt);
        if (ratio < 1.0 - 1e-12) {
            std::ostringstream os;
            os << "lengths_from_angles: cosh ratio " << ratio << " < 1 for edge " << j << k;
            throw InvalidShapeError(os.str());
        }
        lengths[i] = acosh_clamped(ratio);
    }
    return TetShape::from_lengths(lengths);
}

TetShape angles_from_lengths(const TetShape& shape) {
    if (shape.kind != ShapeKind::Lengths)
        throw InvalidInputError("angles_from_lengths: shape kind must be lengths");
    // The cofactor formula acts on the Gram argument labeled by the
    // opposite-face indexing; conjugating by the complement relabeling keeps
    // the same-edge semantics and makes this the exact inverse of
    // lengths_from_angles.
    std::array<double, 6> relabeled{};
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        const auto [cs, ct] = complementary_pair(j, k);
        relabeled[i] = shape.u[pair_index(cs, ct)].real();
    }
    const Mat4 g = gram(TetShape::from_lengths(relabeled));
    std::array<double, 6> alpha{};
    for (int i = 0; i < 6; ++i) {
        const auto [j, k] = kPairs[i];
        const double gst = gram_cofactor(g, j, k).real();
        const double gss = gram_cofactor(g, j, j).real();
        const double gtt = gram_cofactor(g, k, k).real();
        if (!(gss * gtt > 0.0))
            throw InvalidShapeError("angles_from_lengths: diagonal cofactor product not positive");
        const double ratio = gst / std::sqrt(gss * gtt);
        if (ratio < -1.0 - 1e-12 || ratio > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "angles_from_lengths: cos ratio " << ratio << " outside [-1,1] for edge " << j
               << k;
            throw InvalidShapeError(os.str());
        }
        alpha[i] = std::acos(std::clamp(ratio, -1.0, 1.0));
    }
    return TetShape::from_angles(alpha);
}

std::array<Complex, 6> lengths_from_gram_argument(const std::array<Complex, 6>& u) {
    const auto ratios = cofactor_ratios(u);
    std::array<Complex, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = std::acosh(ratios[i]);
    return out;
}

std::array<Complex, 6> angles_from_gram_argument(const std::array<Complex, 6>& lengths) {
    const auto ratios = cofactor_ratios(lengths);
    std::array<Complex, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = std::acos(ratios[i]);
    return out;
}

}  // namespace torsionforge
