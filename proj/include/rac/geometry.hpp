#pragma once

namespace rac {

/// Annulus A/2 < |x| < 1 + A/2 with unit gap width.
struct AnnulusGeometry {
    double A = 1.0;      ///< inverse relative gap width 2 R_i / (R_o - R_i)
    double r_in = 0.5;   ///< A / 2
    double r_out = 1.5;  ///< 1 + A / 2
    double b = 0.0;      ///< ln(1 + 2 / A) = ln(r_out / r_in)

    double gap() const { return r_out - r_in; }
    bool contains_radius(double r) const;
};

/// Polar components (d/dr, (1/r) d/dphi) of the gradient of a scalar field.
struct SurfaceGradient {
    double d_r = 0.0;
    double d_phi_over_r = 0.0;
};

/// Throws DomainError unless A > 0 and finite.
AnnulusGeometry make_geometry(double A);

/// S = r sin(phi) + ln(r) / b. Throws DomainError for r outside [r_in, r_out].
double potential_S(const AnnulusGeometry& g, double r, double phi);

/// grad S = e_3 + e_r / (b r), with e_3 = sin(phi) e_r + cos(phi) e_phi.
SurfaceGradient grad_S(const AnnulusGeometry& g, double r, double phi);

/// max over the closed annulus of |dS/dr| + |(1/r) dS/dphi|.
double gamma_S(const AnnulusGeometry& g);

/// max over the closed annulus of the Euclidean length of grad S.
double gamma_S_II(const AnnulusGeometry& g);

}  // namespace rac
