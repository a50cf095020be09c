#ifndef BTG_EMBEDDING_HPP
#define BTG_EMBEDDING_HPP

#include <array>
#include <vector>

#include "btg/braid.hpp"

namespace btg {

class GenericityError : public Error {
public:
    using Error::Error;
};

struct Point {
    double x = 0;
    double y = 0;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;
/// Event-separation tolerance used throughout construction.
constexpr double kTolerance = 1e-9;
/// Minimum separation of events in window parameter before we refuse.
constexpr double kSeparation = 1e-6;

/// Wraps an angle into [0, 2pi).
double wrap_2pi(double t);
/// Wraps an angle into (-pi, pi].
double wrap_pi(double t);

/// Slot points on the unit circle.  Slot j (0-based) sits at angle
/// 2^{-j} pi for j < n-1 and at 0 for the last slot, so x increases with
/// the slot index and no two chords are parallel.
struct SlotPlacement {
    int n = 0;
    std::vector<double> angles;
    std::vector<Point> points;
    /// Smallest gap between chord directions, modulo pi.
    double slope_margin = 0;
};

SlotPlacement slot_angles(int n);

constexpr int kMaxStrands = 12;

/// Both lifts of the moment when p and q project to the same x after
/// rotating the disk by t.  Sorted by t; p_over tells whether p is the
/// over-strand (larger rotated y) at that lift.
struct CrossingLift {
    double t = 0;
    bool p_over = false;
};
std::array<CrossingLift, 2> crossing_time(Point p, Point q);

/// Rotated x and y of a disk point at time t.
inline double rotated_x(Point p, double c, double s) { return p.x * c - p.y * s; }
inline double rotated_y(Point p, double c, double s) { return p.x * s + p.y * c; }

/// The exchange performed by one letter.
struct ExchangeWindow {
    int letter = 0;
    int slot = 0;   ///< 0-based left slot; the letter exchanges slot, slot+1
    int sign = 1;
    double z_begin = 0;
    double z_end = 0;
    int u_strand = 0;  ///< strand moving from slot to slot+1
    int v_strand = 0;  ///< strand moving from slot+1 to slot
};

/// Canonical geometric closed braid for a word.
///
/// Letter m of l occupies the slab [m/l, (m+1)/l) and performs its
/// exchange in the middle third of the slab.  Strands are labelled by
/// their slot at z = 0.  Within a window of sigma_i^e with local
/// parameter s in [0,1] the two moving strands follow
///
///   u(s) = (1-s) Q_i + s Q_{i+1} + e delta sin(pi s) nhat
///   v(s) = (1-s) Q_{i+1} + s Q_i - e delta sin(pi s) nhat
///
/// where nhat is the chord direction turned by +pi/2; u + v is constant.
class StrandPathSet {
public:
    explicit StrandPathSet(const BraidWord& w);

    const BraidWord& word() const { return word_; }
    int strands() const { return n_; }
    std::size_t length() const { return word_.length(); }
    const SlotPlacement& slots() const { return slots_; }
    double delta() const { return delta_; }
    const std::vector<ExchangeWindow>& windows() const { return windows_; }
    const Permutation& closure_permutation() const { return perm_; }

    /// Strand in the given slot just before letter m (m = l gives the top).
    int occupant(int slot, std::size_t m) const { return occupant_[m * n_ + slot]; }
    int slot_of(int strand, std::size_t m) const { return slot_of_[m * n_ + strand]; }

    /// Window index containing z together with the local parameter s, or
    /// -1 when z is outside every exchange window.
    struct Locus {
        int window = -1;
        double s = 0;
        std::size_t letter = 0;
    };
    Locus locate(double z) const;

    Point position(int strand, double z) const;
    Point position(int strand, const Locus& at) const;
    /// Derivative with respect to the window parameter s (zero outside).
    Point velocity(int strand, const Locus& at) const;

    /// Principal angle of P_a - P_b at height z.
    double pair_angle(int a, int b, double z) const;
    /// Unwrapped change of the angle of P_a - P_b over [z1, z2], with
    /// 0 <= z1 <= z2 <= 1.
    double pair_angle_change(int a, int b, double z1, double z2) const;
    /// d(angle)/ds of P_a - P_b inside a window.
    double pair_angle_rate(int a, int b, const Locus& at) const;

    /// Window-local helpers for the exchanging pair.
    Point exchange_difference(const ExchangeWindow& w, double s) const;  // u - v
    Point exchange_midpoint(const ExchangeWindow& w) const;

private:
    BraidWord word_;
    int n_ = 0;
    SlotPlacement slots_;
    double delta_ = 0;
    Permutation perm_;
    std::vector<ExchangeWindow> windows_;
    std::vector<int> occupant_;
    std::vector<int> slot_of_;
    std::vector<std::vector<int>> strand_windows_;
    // cumulative angle change per unordered pair, indexed by pair_key
    struct PairTrack {
        std::vector<int> windows;
        std::vector<double> cumulative;  // change up to the end of windows[i]
    };
    std::vector<PairTrack> tracks_;

    int pair_key(int a, int b) const { return a < b ? a * n_ + b : b * n_ + a; }
    double window_change(int a, int b, const ExchangeWindow& w, double s0, double s1) const;
    double exchange_phase(const ExchangeWindow& w, double s) const;
};

}  // namespace btg

#endif  // BTG_EMBEDDING_HPP
