#pragma once

#include <map>
#include <string>
#include <vector>

#include "bdq/connection.hpp"
#include "bdq/weyl.hpp"

namespace bdq::fq {

// Para-Kahler data with its connection, the fiber product normalized by
// (i/h) theta * theta = -omega, and the lifted connection on Weyl sections.
class FedosovSystem {
 public:
  explicit FedosovSystem(const pk::ParaKahlerData& d);
  // The jet calculus points into data_.
  FedosovSystem(const FedosovSystem&) = delete;
  FedosovSystem& operator=(const FedosovSystem&) = delete;

  const pk::ParaKahlerData& data() const { return data_; }
  const pk::ConnectionCoefficients& connection() const { return conn_; }
  const FiberProduct& product() const { return prod_; }
  JetCalculus& jets() { return jets_; }
  int rank() const { return data_.rank(); }
  Mask holomorphic() const { return (Mask(1) << (data_.n() + 1)) - 1; }
  Mask antiholomorphic() const { return ((Mask(1) << rank()) - 1) & ~holomorphic(); }

  WeylElement omega() const;
  // nabla^{lc}: rho on coefficients, d on forms, -Gamma^s_{cb} y^b d/dy^s on fibers.
  WeylElement nabla(const WeylElement& a);
  // R^{lc} = sum_{a<b} theta^a theta^b (1/2) Q_pq y^p y^q with Q_pq = -omega(R(e_a, e_b) e_p, e_q).
  const WeylElement& curvature() const { return curvature_; }
  // (i/h)[a, b] truncated at total degree max_degree.
  WeylElement bracket(const WeylElement& a, const WeylElement& b, int max_degree);

 private:
  const Alternating& d_theta(Mask m);

  pk::ParaKahlerData data_;
  pk::ConnectionCoefficients conn_;
  FiberProduct prod_;
  JetCalculus jets_;
  WeylElement curvature_;
  std::map<Mask, Alternating> d_theta_;
};

// mu = -omega.
WeylElement mu_symplectic(const FedosovSystem& s);
// mu = -omega + i h omega_can.
WeylElement mu_canonical(const FedosovSystem& s);

struct FedosovData {
  WeylElement mu;
  WeylElement r;
  int max_degree = 0;
  int iterations = 0;
};

// Throws "invalid_mu" unless mu = -omega + h (1,1)-forms with closed components.
void check_mu(FedosovSystem& s, const WeylElement& mu);
// Fixed point of r = delta^{-1}(r_0) + delta^{-1}(nabla r + (i/h) r*r), r_0 = -omega + R - mu.
FedosovData solve_r(FedosovSystem& s, const WeylElement& mu, int max_degree);

// D a = -delta a + nabla a + (i/h)[r, a], truncated at max_degree when it is >= 0.
WeylElement fedosov_d(FedosovSystem& s, const FedosovData& f, const WeylElement& a, int max_degree = -1);

struct FedosovReport {
  bool delta_inverse_vanishes = false;
  int min_degree = -1;
  bool equation_holds = false;
  bool d_squared_vanishes = false;
  int equation_checked_to = -1;
  int d_squared_checked_to = -1;
};
// Postconditions; D^2 is tested on the fiber variables and on random degree-2 sections.
FedosovReport verify(FedosovSystem& s, const FedosovData& f, std::uint64_t seed = 1);

// Flat section with sigma(lift) = f, up to total degree max_degree.
WeylElement flat_lift(FedosovSystem& s, const FedosovData& f, const JetPoly& jet, int max_degree);

// Coefficients of h^k, k = 0..order, of sigma(lift(f) * lift(g)).
std::vector<JetPoly> star(FedosovSystem& s, const FedosovData& f, const JetPoly& a, const JetPoly& b, int order);

// Bidifferential operator sum c (e_V (x) e_W).
using Bidifferential = std::map<std::pair<cr::Word, cr::Word>, RatFunc>;

struct StarProduct {
  int order = 0;
  std::vector<Bidifferential> b;  // f*g = sum (i h)^k B_k(f, g)
  bool bipolarized = true;
  std::vector<std::string> violations;
};
StarProduct extract_bidiff(FedosovSystem& s, const FedosovData& f, int order);

JetPoly apply_bidiff(JetCalculus& jc, const Bidifferential& b, const JetPoly& f, const JetPoly& g);
// Coefficients of h^k of (f*g)*h - f*(g*h) for k <= order.
std::vector<JetPoly> associator(JetCalculus& jc, const StarProduct& p, const JetPoly& f, const JetPoly& g,
                                const JetPoly& h);
// B(f, g) - B(g, f).
Bidifferential antisymmetrize(const Bidifferential& b);
// The bivector pi = -Omega^{-1} as a bidifferential operator.
Bidifferential poisson_bidiff(const pk::ParaKahlerData& d);

enum class Side { holomorphic, antiholomorphic };
// Lift restricted to one summand: fiber variables and forms along that summand only.
WeylElement polarized_lift(FedosovSystem& s, const FedosovData& f, const JetPoly& jet, Side side, int max_degree);

}  // namespace bdq::fq
