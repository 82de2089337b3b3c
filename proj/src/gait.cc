// Copyright 2026 The Gaitsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaitsense/gait.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t Ticks(double seconds) {
  return static_cast<std::int64_t>(std::llround(seconds / kTickSeconds));
}

double Cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double SmoothStep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

void RequirePositive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw InvalidParameter(std::string(name) + " must be positive");
  }
}

}  // namespace

void ValidateCrawlParams(const CrawlParams& p) {
  RequirePositive(p.stride_frequency, "crawl stride_frequency");
  RequirePositive(p.step_length, "crawl step_length");
  RequirePositive(p.penetration_speed, "crawl penetration_speed");
  RequirePositive(p.body_height, "crawl body_height");
  RequirePositive(p.max_penetration_force, "crawl max_penetration_force");
  RequirePositive(p.max_penetration_depth, "crawl max_penetration_depth");
  RequirePositive(p.transition_duration, "crawl transition_duration");
  RequirePositive(p.recirculation_duration, "crawl recirculation_duration");
  RequirePositive(p.recirculation_apex, "crawl recirculation_apex");
  RequirePositive(p.hover_height, "crawl hover_height");
  RequirePositive(p.contact_force, "crawl contact_force");
  if (!(p.stability_margin_min >= 0.0)) {
    throw InvalidParameter("crawl stability_margin_min must be >= 0");
  }
  // A transition margin below stability_margin_min is allowed; the
  // per-tick check during penetration then reports the instability.
  if (!(p.transition_margin > 0.0)) {
    throw InvalidParameter("crawl transition_margin must be positive");
  }
  const double slot = 0.25 / p.stride_frequency;
  const double penetration =
      (p.hover_height + p.max_penetration_depth) / p.penetration_speed;
  if (p.transition_duration + p.recirculation_duration + penetration > slot) {
    std::ostringstream msg;
    msg << "crawl phases need " << p.transition_duration +
               p.recirculation_duration + penetration
        << " s but a leg slot lasts " << slot << " s";
    throw InvalidParameter(msg.str());
  }
}

void ValidateTrotParams(const TrotParams& p) {
  if (!(p.stride_frequency >= 1.0 && p.stride_frequency <= 4.0)) {
    std::ostringstream msg;
    msg << "trot stride_frequency " << p.stride_frequency
        << " Hz outside [1, 4] Hz";
    throw InvalidParameter(msg.str());
  }
  if (!(p.duty_factor > 0.0 && p.duty_factor < 1.0)) {
    throw InvalidParameter("trot duty_factor must lie in (0, 1)");
  }
  RequirePositive(p.step_length, "trot step_length");
  RequirePositive(p.body_height, "trot body_height");
  RequirePositive(p.swing_apex, "trot swing_apex");
  RequirePositive(p.arrest_force, "trot arrest_force");
  RequirePositive(p.max_arrest_time, "trot max_arrest_time");
  RequirePositive(p.max_depth, "trot max_depth");
  RequirePositive(p.load_rise_time, "trot load_rise_time");
  if (!(p.settle_time >= 0.0)) {
    throw InvalidParameter("trot settle_time must be non-negative");
  }
  RequirePositive(p.unload_time, "trot unload_time");
  RequirePositive(p.bounce_frequency, "trot bounce_frequency");
  RequirePositive(p.bounce_decay, "trot bounce_decay");
  if (!(p.touchdown_speed_jitter >= 0.0) ||
      p.touchdown_speed - p.touchdown_speed_jitter < 0.5) {
    throw InvalidParameter("trot touchdown speed must stay >= 0.5 m/s");
  }
  if (!(p.impact_acceleration >= 0.0) ||
      !(p.impact_acceleration_jitter >= 0.0 &&
        p.impact_acceleration_jitter <= 1.0) ||
      !(p.bounce_amplitude >= 0.0) ||
      !(p.bounce_jitter >= 0.0 && p.bounce_jitter <= 1.0) ||
      !(p.body_oscillation >= 0.0)) {
    throw InvalidParameter("trot impact parameters out of range");
  }
  const double stance = p.duty_factor / p.stride_frequency;
  if (p.max_arrest_time + p.settle_time + p.load_rise_time + p.unload_time >=
      stance) {
    throw InvalidParameter("trot stance too short for arrest and unloading");
  }
}

SupportPolygon MakeSupportPolygon(std::span<const Point3> toes) {
  if (toes.size() < 3) {
    throw TooFewContacts(std::to_string(toes.size()) +
                         " stance toes, need at least 3");
  }
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(toes.size());
  for (const Point3& t : toes) pts.emplace_back(t.x(), t.y());
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  // Andrew's monotone chain.
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && Cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && Cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  double area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    area += Cross2(hull[i], hull[(i + 1) % hull.size()]);
  }
  if (hull.size() < 3 || 0.5 * area <= kMinTriangleArea) {
    throw TooFewContacts("stance toes are collinear");
  }
  return SupportPolygon{std::move(hull)};
}

double ComMargin(const Point3& com, const SupportPolygon& polygon) {
  const Eigen::Vector2d p(com.x(), com.y());
  double margin = std::numeric_limits<double>::infinity();
  const auto& v = polygon.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Eigen::Vector2d edge = v[(i + 1) % v.size()] - v[i];
    margin = std::min(margin, Cross2(edge, p - v[i]) / edge.norm());
  }
  return margin;
}

Eigen::Vector2d Incenter(const Point3& a, const Point3& b, const Point3& c) {
  const Eigen::Vector2d pa(a.x(), a.y()), pb(b.x(), b.y()), pc(c.x(), c.y());
  const double la = (pb - pc).norm();
  const double lb = (pa - pc).norm();
  const double lc = (pa - pb).norm();
  const double sum = la + lb + lc;
  if (sum <= 0.0) throw TooFewContacts("coincident stance toes");
  return (la * pa + lb * pb + lc * pc) / sum;
}

namespace {

Eigen::Vector2d ClosestOnSegment(const Eigen::Vector2d& p,
                                 const Eigen::Vector2d& a,
                                 const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return a + t * ab;
}

}  // namespace

Eigen::Vector2d ShiftTarget(const Point3& p, const Point3& a, const Point3& b,
                            const Point3& c, double margin) {
  const Eigen::Vector2d in = Incenter(a, b, c);
  const std::array<Point3, 3> tri = {a, b, c};
  const double r = ComMargin(Point3(in.x(), in.y(), 0.0),
                             MakeSupportPolygon(tri));
  if (!(r > margin)) {
    std::ostringstream msg;
    msg << "support triangle inradius " << r << " m <= margin " << margin;
    throw UnstablePlan(msg.str());
  }
  // Shrinking every edge inward by `margin` is a homothety about the
  // incentre.
  const double s = (r - margin) / r;
  std::array<Eigen::Vector2d, 3> v;
  for (int i = 0; i < 3; ++i) {
    v[i] = in + s * (Eigen::Vector2d(tri[i].x(), tri[i].y()) - in);
  }
  const Eigen::Vector2d q(p.x(), p.y());
  const SupportPolygon inner = MakeSupportPolygon(std::array<Point3, 3>{
      Point3(v[0].x(), v[0].y(), 0), Point3(v[1].x(), v[1].y(), 0),
      Point3(v[2].x(), v[2].y(), 0)});
  if (ComMargin(p, inner) >= 0.0) return q;
  Eigen::Vector2d best = v[0];
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d c2 = ClosestOnSegment(q, v[i], v[(i + 1) % 3]);
    if ((c2 - q).squaredNorm() < (best - q).squaredNorm()) best = c2;
  }
  return best;
}

Eigen::VectorXd DistributeLoad(std::span<const Point3> toes, const Point3& com,
                               double total, const Point3* probe_toe,
                               double probe_force) {
  const int n = static_cast<int>(toes.size());
  if (n < 3) {
    throw TooFewContacts(std::to_string(n) + " loaded toes, need at least 3");
  }
  Eigen::MatrixXd a(3, n);
  for (int i = 0; i < n; ++i) {
    a(0, i) = 1.0;
    a(1, i) = toes[i].x() - com.x();
    a(2, i) = toes[i].y() - com.y();
  }
  Eigen::Vector3d b(total, 0.0, 0.0);
  if (probe_toe != nullptr) {
    b(0) -= probe_force;
    b(1) -= probe_force * (probe_toe->x() - com.x());
    b(2) -= probe_force * (probe_toe->y() - com.y());
  }
  const Eigen::Matrix3d gram = a * a.transpose();
  Eigen::VectorXd f = a.transpose() * gram.ldlt().solve(b);
  // Toes cannot pull.
  if (f.minCoeff() < 0.0) {
    f = f.cwiseMax(0.0);
    const double s = f.sum();
    if (s > 0.0) f *= std::max(b(0), 0.0) / s;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Crawl

CrawlGait::CrawlGait(const CrawlParams& params, const RobotGeometry& robot,
                     double start_x)
    : params_(params),
      robot_(robot),
      min_margin_(std::numeric_limits<double>::infinity()) {
  ValidateCrawlParams(params_);
  slot_ticks_ = Ticks(0.25 / params_.stride_frequency);
  transition_ticks_ = Ticks(params_.transition_duration);
  recirculation_ticks_ = Ticks(params_.recirculation_duration);

  body_ = Point3(start_x, 0.0, params_.body_height);
  const double l = params_.step_length;
  std::array<double, kNumLegs> offset{};
  offset[Index(Leg::kLF)] = -0.5 * l;
  offset[Index(Leg::kRR)] = -0.25 * l;
  offset[Index(Leg::kRF)] = 0.0;
  offset[Index(Leg::kLR)] = 0.25 * l;
  for (Leg leg : kAllLegs) {
    const Vec3& hip = robot_.leg(leg).hip_offset;
    planted_[Index(leg)] =
        Point3(start_x + hip.x() + offset[Index(leg)], hip.y(), 0.0);
  }
  contacts_ = planted_;
  const Eigen::VectorXd f =
      DistributeLoad(planted_, body_, robot_.Weight());
  for (int i = 0; i < kNumLegs; ++i) loads_[i] = f(i);
}

GaitCommand CrawlGait::Initial() const {
  GaitCommand cmd;
  cmd.body = body_;
  for (int i = 0; i < kNumLegs; ++i) {
    cmd.legs[i].mode = ContactMode::kLoaded;
    cmd.legs[i].phase = Phase::kSupport;
    cmd.legs[i].toe = planted_[i];
    cmd.legs[i].force = loads_[i];
  }
  return cmd;
}

std::array<Point3, 3> CrawlGait::SupportToes(
    const GaitFeedback& feedback) const {
  return {feedback.toe[support_[0]], feedback.toe[support_[1]],
          feedback.toe[support_[2]]};
}

void CrawlGait::BeginSlot(Leg leg, const GaitFeedback& feedback) {
  leg_ = leg;
  int n = 0;
  for (Leg other : kAllLegs) {
    if (other != leg) support_[n++] = Index(other);
  }
  const std::array<Point3, 3> tri = SupportToes(feedback);
  const Eigen::Vector2d c = ShiftTarget(body_, tri[0], tri[1], tri[2],
                                        params_.transition_margin);
  const double z = (tri[0].z() + tri[1].z() + tri[2].z()) / 3.0;
  body_start_ = body_;
  body_target_ = Point3(c.x(), c.y(), z + params_.body_height);

  const double margin = ComMargin(body_target_, MakeSupportPolygon(tri));
  if (margin <= 0.0) {
    std::ostringstream msg;
    msg << "CoM target outside the support triangle (" << margin
        << " m) before lifting " << LegName(leg);
    throw UnstablePlan(msg.str());
  }

  loads_start_ = loads_;
  const Eigen::VectorXd f = DistributeLoad(tri, body_target_, robot_.Weight());
  loads_target_.fill(0.0);
  for (int i = 0; i < 3; ++i) loads_target_[support_[i]] = f(i);
  penetration_done_ = false;
}

GaitCommand CrawlGait::Advance(const GaitFeedback& feedback) {
  const std::int64_t k = tick_ % slot_ticks_;
  const Leg leg = kOrder[(tick_ / slot_ticks_) % kNumLegs];
  if (k == 0) BeginSlot(leg, feedback);
  ++tick_;
  const int li = Index(leg);

  GaitCommand cmd;
  for (int i = 0; i < kNumLegs; ++i) {
    cmd.legs[i].mode = ContactMode::kLoaded;
    cmd.legs[i].phase = Phase::kSupport;
    cmd.legs[i].toe = planted_[i];
  }

  if (k < transition_ticks_) {
    const double s = static_cast<double>(k + 1) / transition_ticks_;
    body_ = body_start_ + s * (body_target_ - body_start_);
    for (int i = 0; i < kNumLegs; ++i) {
      loads_[i] = (1.0 - s) * loads_start_[i] + s * loads_target_[i];
      cmd.legs[i].phase = Phase::kTransition;
    }
  } else if (k < transition_ticks_ + recirculation_ticks_) {
    const std::int64_t r = k - transition_ticks_;
    LegCommand& lc = cmd.legs[li];
    if (r == 0) {
      lift_ = feedback.toe[li];
      hover_ = Point3(lift_.x() + params_.step_length, lift_.y(),
                      params_.hover_height);
      lc.step_start = true;
      lc.foothold_x = hover_.x();
    }
    // Cycloid: zero velocity at both ends, apex above the chord midpoint.
    const double period = recirculation_ticks_ * kTickSeconds;
    const double tau = static_cast<double>(r + 1) / recirculation_ticks_;
    const double w = kTwoPi * tau;
    const double sigma = tau - std::sin(w) / kTwoPi;
    const double dsigma = (1.0 - std::cos(w)) / period;
    const double ddsigma = kTwoPi * std::sin(w) / (period * period);
    const Vec3 chord = hover_ - lift_;
    const double apex = params_.recirculation_apex;
    lc.mode = ContactMode::kFree;
    lc.phase = Phase::kRecirculation;
    lc.toe = lift_ + sigma * chord + Vec3(0, 0, apex * 0.5 * (1.0 - std::cos(w)));
    lc.velocity =
        dsigma * chord + Vec3(0, 0, apex * std::numbers::pi * std::sin(w) / period);
    lc.acceleration =
        ddsigma * chord +
        Vec3(0, 0, apex * 2.0 * std::numbers::pi * std::numbers::pi *
                        std::cos(w) / (period * period));
    body_ = body_target_;
    loads_ = loads_target_;
    loads_[li] = 0.0;
  } else {
    const std::int64_t p = k - transition_ticks_ - recirculation_ticks_;
    const std::array<Point3, 3> tri = SupportToes(feedback);
    if (p == 0) {
      const GroundFrame plane = FitPlaneThreePoints(
          contacts_[support_[0]], contacts_[support_[1]],
          contacts_[support_[2]]);
      direction_ = -plane.normal;
      penetration_ticks_ = 0;
      contact_recorded_ = false;
    }
    if (!penetration_done_ && penetration_ticks_ > 0) {
      if (!contact_recorded_ &&
          feedback.force_est[li] >= params_.contact_force) {
        contacts_[li] = feedback.toe[li];
        contact_recorded_ = true;
      }
      const double travel =
          penetration_ticks_ * params_.penetration_speed * kTickSeconds;
      if (feedback.force_est[li] >= params_.max_penetration_force ||
          travel >= params_.hover_height + params_.max_penetration_depth -
                        1e-12) {
        penetration_done_ = true;
        held_force_ = feedback.force_true[li];
        planted_[li] = feedback.toe[li];
      }
    }

    LegCommand& lc = cmd.legs[li];
    Eigen::VectorXd f;
    if (!penetration_done_) {
      ++penetration_ticks_;
      lc.mode = ContactMode::kFree;
      lc.phase = Phase::kPenetration;
      lc.toe = hover_ + direction_ * (params_.penetration_speed *
                                      kTickSeconds * penetration_ticks_);
      lc.velocity = direction_ * params_.penetration_speed;

      const double margin = ComMargin(body_, MakeSupportPolygon(tri));
      min_margin_ = std::min(min_margin_, margin);
      if (margin <= params_.stability_margin_min) {
        std::ostringstream msg;
        msg << "CoM margin " << margin << " m while " << LegName(leg)
            << " penetrates";
        throw InstabilityError(msg.str());
      }
      f = DistributeLoad(tri, body_, robot_.Weight(), &feedback.toe[li],
                         feedback.force_true[li]);
      loads_[li] = 0.0;
    } else {
      lc.toe = planted_[li];
      lc.force = held_force_;
      f = DistributeLoad(tri, body_, robot_.Weight(), &planted_[li],
                         held_force_);
      loads_[li] = held_force_;
    }
    for (int i = 0; i < 3; ++i) loads_[support_[i]] = f(i);
  }

  cmd.body = body_;
  for (int i = 0; i < kNumLegs; ++i) {
    if (cmd.legs[i].mode == ContactMode::kLoaded) cmd.legs[i].force = loads_[i];
  }
  return cmd;
}

// ---------------------------------------------------------------------------
// Trot

TrotGait::TrotGait(const TrotParams& params, const RobotGeometry& robot,
                   double start_x, RandomStream rng)
    : params_(params), robot_(robot), rng_(std::move(rng)), start_x_(start_x) {
  ValidateTrotParams(params_);
  period_ticks_ = Ticks(1.0 / params_.stride_frequency);
  stance_ticks_ = Ticks(params_.duty_factor / params_.stride_frequency);
  phase_offset_ = rng_.Uniform(0.0, kTwoPi);

  const double quarter = 0.25 * params_.step_length;
  for (Leg leg : kAllLegs) {
    LegState& s = legs_[Index(leg)];
    const bool pair_a = leg == Leg::kLF || leg == Leg::kRR;
    s.offset = pair_a ? 0 : period_ticks_ / 2;
    if (pair_a) {
      // Touches down on the first tick.
      s.touchdown = Foothold(leg, 0);
      DrawImpact(s);
      s.last = s.touchdown;
    } else {
      s.last = Foothold(leg, 0) - Vec3(2.0 * quarter, 0.0, 0.0);
    }
  }
}

void TrotGait::DrawImpact(LegState& s) {
  const TrotParams& p = params_;
  s.touchdown_speed = rng_.Uniform(p.touchdown_speed - p.touchdown_speed_jitter,
                                   p.touchdown_speed + p.touchdown_speed_jitter);
  s.acceleration =
      p.impact_acceleration * (1.0 + rng_.Uniform(-p.impact_acceleration_jitter,
                                                  p.impact_acceleration_jitter));
  s.bounce = p.bounce_amplitude *
             (1.0 + rng_.Uniform(-p.bounce_jitter, p.bounce_jitter));
  s.arrested = false;
}

Point3 TrotGait::BodyAt(std::int64_t tick) const {
  const double speed = params_.step_length * params_.stride_frequency;
  return Point3(start_x_ + speed * tick * kTickSeconds, 0.0,
                params_.body_height);
}

Point3 TrotGait::Foothold(Leg leg, std::int64_t touchdown_tick) const {
  const Vec3& hip = robot_.leg(leg).hip_offset;
  const Point3 body = BodyAt(touchdown_tick);
  return Point3(body.x() + hip.x() + 0.25 * params_.step_length,
                body.y() + hip.y(), 0.0);
}

GaitCommand TrotGait::Initial() const {
  GaitCommand cmd;
  cmd.body = BodyAt(0);
  for (int i = 0; i < kNumLegs; ++i) {
    cmd.legs[i].mode = ContactMode::kFree;
    cmd.legs[i].phase = Phase::kStance;
    cmd.legs[i].toe = legs_[i].last;
  }
  return cmd;
}

LegCommand TrotGait::Swing(LegState& s, std::int64_t j) {
  LegCommand lc;
  lc.mode = ContactMode::kFree;
  lc.phase = Phase::kSwing;
  const std::int64_t swing_ticks = period_ticks_ - stance_ticks_;
  if (j == 0) {
    s.swing_start = s.last;
    lc.step_start = true;
  }
  const double period = swing_ticks * kTickSeconds;
  const double tau = (j + 1) * kTickSeconds;
  const double u = tau / period;

  const double dx = s.touchdown.x() - s.swing_start.x();
  const double x = s.swing_start.x() + dx * (3 * u * u - 2 * u * u * u);
  const double vx = dx * (6 * u - 6 * u * u) / period;
  const double ax = dx * (6 - 12 * u) / (period * period);

  // Rise to the apex, then a Hermite descent that lands at the touchdown
  // speed.
  const double half = 0.5 * period;
  const double apex = params_.swing_apex;
  double z, vz, az;
  if (tau <= half) {
    const double w = tau / half;
    const double dz = apex - s.swing_start.z();
    z = s.swing_start.z() + dz * (3 * w * w - 2 * w * w * w);
    vz = dz * (6 * w - 6 * w * w) / half;
    az = dz * (6 - 12 * w) / (half * half);
  } else {
    const double w = (tau - half) / half;
    const double v1 = -s.touchdown_speed * half;
    z = apex * (2 * w * w * w - 3 * w * w + 1) + v1 * (w * w * w - w * w);
    vz = (apex * (6 * w * w - 6 * w) + v1 * (3 * w * w - 2 * w)) / half;
    az = (apex * (12 * w - 6) + v1 * (6 * w - 2)) / (half * half);
  }
  lc.toe = Point3(x, s.touchdown.y(), z);
  lc.velocity = Vec3(vx, 0.0, vz);
  lc.acceleration = Vec3(ax, 0.0, az);
  lc.foothold_x = s.touchdown.x();
  s.last = lc.toe;
  return lc;
}

LegCommand TrotGait::Stance(Leg leg, LegState& s, std::int64_t j,
                            const GaitFeedback& feedback) {
  const TrotParams& p = params_;
  const int li = Index(leg);
  LegCommand lc;
  lc.phase = Phase::kStance;
  if (!s.arrested && j >= 1) {
    const double elapsed = j * kTickSeconds;
    const double depth = -s.last.z();
    if (feedback.force_true[li] >= p.arrest_force ||
        elapsed >= p.max_arrest_time - 1e-12 ||
        depth >= p.max_depth - 1e-12) {
      s.arrested = true;
      s.arrest_tick = j;
      s.held = s.last;
      s.held_force = feedback.force_static[li];
    }
  }
  if (!s.arrested) {
    const double tau = (j + 1) * kTickSeconds;
    const double depth =
        std::min(s.touchdown_speed * tau + 0.5 * s.acceleration * tau * tau,
                 p.max_depth);
    lc.mode = ContactMode::kFree;
    lc.toe = s.touchdown - Vec3(0.0, 0.0, depth);
    lc.velocity = Vec3(0.0, 0.0, -(s.touchdown_speed + s.acceleration * tau));
    lc.acceleration = Vec3(0.0, 0.0, -s.acceleration);
    s.last = lc.toe;
    return lc;
  }
  const double t = (j - s.arrest_tick) * kTickSeconds;
  const double share = 0.5 * robot_.Weight();
  const double rise = SmoothStep((t - p.settle_time) / p.load_rise_time);
  double force = s.held_force + (share - s.held_force) * rise +
                 s.bounce * std::exp(-t / p.bounce_decay) *
                     std::sin(kTwoPi * p.bounce_frequency * t);
  const double remaining = (stance_ticks_ - j) * kTickSeconds;
  force *= std::min(1.0, remaining / p.unload_time);
  lc.mode = ContactMode::kImposed;
  lc.toe = s.held;
  lc.force = std::max(force, 0.0);
  return lc;
}

GaitCommand TrotGait::Advance(const GaitFeedback& feedback) {
  GaitCommand cmd;
  cmd.body = BodyAt(tick_);
  const std::int64_t swing_ticks = period_ticks_ - stance_ticks_;
  for (Leg leg : kAllLegs) {
    LegState& s = legs_[Index(leg)];
    const std::int64_t local =
        ((tick_ - s.offset) % period_ticks_ + period_ticks_) % period_ticks_;
    if (local < stance_ticks_) {
      cmd.legs[Index(leg)] = Stance(leg, s, local, feedback);
    } else {
      if (local == stance_ticks_) {
        s.touchdown = Foothold(leg, tick_ + swing_ticks);
        DrawImpact(s);
      }
      cmd.legs[Index(leg)] = Swing(s, local - stance_ticks_);
    }
  }
  cmd.estimate_offset_z =
      params_.body_oscillation *
      std::sin(kTwoPi * params_.stride_frequency * tick_ * kTickSeconds +
               phase_offset_);
  ++tick_;
  return cmd;
}

}  // namespace gaitsense
