#pragma once

#include <boost/rational.hpp>

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace npz {

struct LatticePoint {
    long i = 0;
    long j = 0;

    // y-major order, then x.
    friend auto operator<=>(const LatticePoint& a, const LatticePoint& b)
    {
        if (auto c = a.j <=> b.j; c != 0)
            return c;
        return a.i <=> b.i;
    }
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    LatticePoint operator+(const LatticePoint& o) const { return {i + o.i, j + o.j}; }
    LatticePoint operator-(const LatticePoint& o) const { return {i - o.i, j - o.j}; }
};

std::string to_string(const LatticePoint& q);

struct Edge {
    LatticePoint from;
    LatticePoint to;
    long a = 0;  // primitive inward normal (a, b)
    long b = 0;
    long N = 0;  // e . from
    long length = 0;

    long eval(const LatticePoint& q) const { return a * q.i + b * q.j; }
};

// Lattice polygon given by its clockwise vertex list, starting at the topmost vertex
// (leftmost among ties).
class NewtonPolytope {
public:
    NewtonPolytope() = default;
    static NewtonPolytope from_support(std::vector<LatticePoint> support);

    const std::vector<LatticePoint>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    long genus() const { return static_cast<long>(interior_.size()); }
    long boundary_count() const { return boundary_; }
    long volume_x2() const { return vol2_; }
    boost::rational<long> volume() const { return {vol2_, 2}; }
    const std::vector<LatticePoint>& interior_points() const { return interior_; }
    const std::vector<LatticePoint>& lattice_points() const { return points_; }

    bool contains(const LatticePoint& q) const;
    bool contains_interior(const LatticePoint& q) const;
    bool in_dilate(const LatticePoint& q, long m) const;
    std::vector<LatticePoint> dilate_points(long m) const;  // y-major
    boost::rational<long> level(const LatticePoint& q) const;

    bool unique_top() const;
    bool unique_bottom() const;
    LatticePoint top() const;     // leftmost among the topmost
    LatticePoint bottom() const;  // leftmost among the bottommost
    long d_t() const { return top().j; }
    long d_b() const { return bottom().j; }
    long c_t() const { return top().i; }
    long c_b() const { return bottom().i; }
    long height() const { return d_t() - d_b(); }
    long width() const;
    long min_x() const;
    long max_x() const;
    bool origin_interior() const { return contains_interior({0, 0}); }

    // Integer x-range of row j in m*Gamma; empty if lo > hi.
    std::pair<long, long> row_range(long j, long m) const;

private:
    std::vector<LatticePoint> vertices_;
    std::vector<Edge> edges_;
    std::vector<LatticePoint> points_;
    std::vector<LatticePoint> interior_;
    long boundary_ = 0;
    long vol2_ = 0;
};

// Exponent map q -> M q + shift with |det M| = 1.
struct UnimodularMap {
    std::array<std::array<long, 2>, 2> m{{{1, 0}, {0, 1}}};
    LatticePoint shift{0, 0};

    LatticePoint apply(const LatticePoint& q) const
    {
        return {m[0][0] * q.i + m[0][1] * q.j + shift.i, m[1][0] * q.i + m[1][1] * q.j + shift.j};
    }
    long det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    bool is_identity() const
    {
        return m[0][0] == 1 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 1 && shift.i == 0 &&
               shift.j == 0;
    }
    static UnimodularMap identity() { return {}; }
    static UnimodularMap swap() { return {{{{0, 1}, {1, 0}}}, {0, 0}}; }
};

NewtonPolytope transform(const NewtonPolytope& P, const UnimodularMap& U);

struct PolytopeConstants {
    long chi1 = 0;
    long chi2 = 0;
    long kappa1 = 0;
    long kappa2 = 0;
    long lambda_kappa = 0;
    long M = 0;
    long Delta = 0;
};

// Requires a unique top and bottom vertex and the origin in the interior.
PolytopeConstants constants(const NewtonPolytope& P);

// Returns a map after which the polygon has unique top and bottom vertices and the
// origin in its interior. Throws GenusZero when no interior lattice point exists.
UnimodularMap normalize(const NewtonPolytope& P);

bool is_normalized(const NewtonPolytope& P);

}  // namespace npz
