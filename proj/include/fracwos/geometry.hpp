#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fracwos/types.hpp"

namespace fracwos {

/// Open domain Ω ⊂ R^n. Boundary points are not members.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual int dimension() const = 0;
  virtual std::string name() const = 0;
  virtual bool contains(PointView x) const = 0;

  /// Euclidean distance to ∂Ω; throws DomainError unless contains(x).
  double dist_boundary(PointView x) const;

  /// A nearest point of ∂Ω. Ties go to the lexicographically smallest point.
  virtual Point project_boundary(PointView x) const = 0;

  /// Axis-aligned bounding box (lower, upper).
  virtual std::pair<Point, Point> bounds() const = 0;

 protected:
  virtual double distance_inside(PointView x) const = 0;
};

class BallDomain : public Domain {
 public:
  BallDomain(Point center, double radius);

  int dimension() const override { return static_cast<int>(center_.size()); }
  std::string name() const override { return "ball"; }
  bool contains(PointView x) const override;
  Point project_boundary(PointView x) const override;
  std::pair<Point, Point> bounds() const override;

  const Point& center() const { return center_; }
  double radius() const { return radius_; }

 protected:
  double distance_inside(PointView x) const override;

 private:
  Point center_;
  double radius_;
};

class BoxDomain : public Domain {
 public:
  BoxDomain(Point lower, Point upper);

  int dimension() const override { return static_cast<int>(lower_.size()); }
  std::string name() const override { return "box"; }
  bool contains(PointView x) const override;
  Point project_boundary(PointView x) const override;
  std::pair<Point, Point> bounds() const override { return {lower_, upper_}; }

 protected:
  double distance_inside(PointView x) const override;

 private:
  Point lower_;
  Point upper_;
};

/// {x : inner < |x − c| < outer}.
class AnnulusDomain : public Domain {
 public:
  AnnulusDomain(Point center, double inner, double outer);

  int dimension() const override { return static_cast<int>(center_.size()); }
  std::string name() const override { return "annulus"; }
  bool contains(PointView x) const override;
  Point project_boundary(PointView x) const override;
  std::pair<Point, Point> bounds() const override;

 protected:
  double distance_inside(PointView x) const override;

 private:
  Point center_;
  double inner_;
  double outer_;
};

/// Interior of a simple polygon in the plane (vertices in either orientation).
class PolygonDomain : public Domain {
 public:
  explicit PolygonDomain(std::vector<std::pair<double, double>> vertices, std::string name = "polygon");

  int dimension() const override { return 2; }
  std::string name() const override { return name_; }
  bool contains(PointView x) const override;
  Point project_boundary(PointView x) const override;
  std::pair<Point, Point> bounds() const override;

  const std::vector<std::pair<double, double>>& vertices() const { return vertices_; }

 protected:
  double distance_inside(PointView x) const override;

 private:
  double min_edge_distance2(double px, double py) const;

  std::vector<std::pair<double, double>> vertices_;
  std::string name_;
  double scale_;
};

/// [−1, 1]² ∖ (0, 1]².
class LShapeDomain : public PolygonDomain {
 public:
  LShapeDomain();
};

/// Regular hexagon with horizontal top and bottom edges; vertices at
/// centre + R(±1, 0) and centre + R(±1/2, ±√3/2).
class HexagonDomain : public PolygonDomain {
 public:
  explicit HexagonDomain(double circumradius = 1.0, std::pair<double, double> center = {0.0, 0.0});
};

}  // namespace fracwos
