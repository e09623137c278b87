#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "segmentation.hpp"
#include "support.hpp"
#include "synthetic_demo.hpp"

using namespace screwxfer;
using namespace sxtest;

TEST_CASE("three concatenated screws give four guiding poses at the junctions") {
  const std::vector<Pose> path = three_screw_path();
  REQUIRE(path.size() == 60);
  const double tol = 1e-3;
  const GuidingPoses g = segment_constant_screws(path, tol);
  CHECK(g.size() == 4);
  CHECK(g.source_indices == std::vector<std::size_t>{0, 19, 39, 59});
  CHECK(g.frame == FrameTag::World);
  const std::vector<Pose> rec = reconstruct(g);
  REQUIRE(rec.size() == path.size());
  for (std::size_t i = 0; i < path.size(); ++i) CHECK(pose_distance(rec[i], path[i]) <= tol);
}

TEST_CASE("noisy single screw collapses to one segment") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n(0.0, 1.0);
  const Pose g0(Rotation::about_axis(Vec3::UnitX(), 0.2), Vec3(0.5, 0.0, 0.4));
  const Pose g1 = Pose(Rotation::about_axis(Vec3(0, 1, 1).normalized(), 1.2), Vec3(0.1, 0.2, 0.0)) * g0;
  std::vector<Pose> path;
  for (int k = 0; k < 60; ++k) {
    const Pose clean = sclerp(g0, g1, k / 59.0);
    const Vec3 dr = 1e-5 * Vec3(n(rng), n(rng), n(rng));
    const Vec3 dt = 1e-5 * Vec3(n(rng), n(rng), n(rng));
    const Pose noise(Rotation::about_axis(dr.normalized(), dr.norm()), dt);
    path.push_back(noise * clean);
  }
  const GuidingPoses g = segment_constant_screws(path, 1e-3);
  CHECK(g.size() == 2);
  CHECK(g.source_indices == std::vector<std::size_t>{0, 59});
}

TEST_CASE("two samples are one segment") {
  const std::vector<Pose> path{Pose(), Pose::from_translation(Vec3(1, 0, 0))};
  CHECK(segment_constant_screws(path, 1e-3).size() == 2);
}

TEST_CASE("segmentation rejects bad input") {
  CHECK_THROWS_AS(segment_constant_screws({Pose()}, 1e-3), DomainError);
  CHECK_THROWS_AS(segment_constant_screws({Pose(), Pose()}, 0.0), DomainError);
}

TEST_CASE("reconstruction stays within tolerance for any tolerance") {
  const std::vector<Pose> path = three_screw_path();
  for (double tol : {1e-6, 1e-4, 1e-2, 0.1}) {
    const GuidingPoses g = segment_constant_screws(path, tol);
    CHECK(g.source_indices.front() == 0);
    CHECK(g.source_indices.back() == path.size() - 1);
    const std::vector<Pose> rec = reconstruct(g);
    for (std::size_t i = 0; i < path.size(); ++i) CHECK(pose_distance(rec[i], path[i]) <= tol);
  }
}

TEST_CASE("passive frame round trip") {
  std::mt19937_64 rng(42);
  GuidingPoses g = segment_constant_screws(three_screw_path(), 1e-3);
  const Pose passive = random_pose(rng);
  const GuidingPoses rel = relativize_to_passive(g, passive);
  CHECK(rel.frame == FrameTag::PassiveBase);
  const GuidingPoses back = to_world(rel, passive);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(pose_distance(back.poses[i], g.poses[i]) < 1e-12);
  CHECK_THROWS_AS(relativize_to_passive(rel, passive), DomainError);
  CHECK_THROWS_AS(to_world(g, passive), DomainError);
}

TEST_CASE("recorded demonstration matches samplewise forward kinematics") {
  const ArmModel arm = default_arm();
  const Demonstration demo = synthetic_pour_demo(arm);
  const std::vector<Pose> poses = fk_path(arm, demo.joints);
  REQUIRE(poses.size() == demo.joints.size());
  for (std::size_t i = 0; i < poses.size(); ++i)
    CHECK(matrix_gap(poses[i].matrix(), fk_oracle(arm, demo.joints[i])) < 1e-10);
}

TEST_CASE("synthetic pour demo segments at its key poses") {
  const ArmModel arm = default_arm();
  const Demonstration demo = synthetic_pour_demo(arm);
  CHECK(demo.joints.size() == 101);
  const GuidingPoses g = segment_constant_screws(fk_path(arm, demo.joints), kDefaultSegTol);
  CHECK(g.source_indices == std::vector<std::size_t>{0, 20, 40, 60, 80, 100});
}
