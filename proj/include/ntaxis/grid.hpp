#pragma once

// Structured, uniform, cell-centered grid on the box [0,L1]x..x[0,Ld] with
// homogeneous Neumann (no-flux) boundaries, plus the discrete calculus the
// solver and the diagnostics are built on.
//
// Conventions:
//  * cells are stored row-major, axis 0 slowest;
//  * only interior faces are stored; boundary faces carry zero flux and zero
//    gradient implicitly;
//  * every face has the same dual volume as a cell (h_a times the transverse
//    face area), so face quadrature is sum(f) * cell_volume().

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ntaxis {

struct GridSpec
{
   int dim = 1;
   std::array<int, 3> cells{2, 1, 1};
   std::array<double, 3> lengths{1.0, 1.0, 1.0};

   bool operator==(const GridSpec&) const = default;
};

using Point = std::array<double, 3>;

class Grid
{
public:
   explicit Grid(const GridSpec& spec);

   const GridSpec& spec() const { return spec_; }
   int dim() const { return spec_.dim; }
   /// Number of cells along an axis; 1 for axes beyond dim().
   int cells(int axis) const { return extent_[axis]; }
   double h(int axis) const { return h_[axis]; }
   double length(int axis) const { return spec_.lengths[axis]; }
   double cell_volume() const { return cell_volume_; }
   /// |Omega|
   double volume() const;
   std::size_t size() const { return size_; }
   std::size_t stride(int axis) const { return stride_[axis]; }
   /// Interior faces normal to `axis`.
   std::size_t face_count(int axis) const;

   std::array<int, 3> multi_index(std::size_t cell) const;
   Point center(std::size_t cell) const;

   /// Calls f(face, left_cell) for every interior face normal to `axis`;
   /// the right cell is left_cell + stride(axis).
   template <class F>
   void for_each_face(int axis, F&& f) const
   {
      const std::size_t inner = stride_[axis];
      const std::size_t n = static_cast<std::size_t>(extent_[axis]);
      const std::size_t outer = size_ / (n * inner);
      std::size_t face = 0;
      for (std::size_t o = 0; o < outer; ++o)
      {
         for (std::size_t m = 0; m + 1 < n; ++m)
         {
            const std::size_t base = o * n * inner + m * inner;
            for (std::size_t i = 0; i < inner; ++i, ++face)
            {
               f(face, base + i);
            }
         }
      }
   }

   bool operator==(const Grid& other) const { return spec_ == other.spec_; }

private:
   GridSpec spec_;
   std::array<int, 3> extent_{1, 1, 1};
   std::array<double, 3> h_{1.0, 1.0, 1.0};
   std::array<std::size_t, 3> stride_{1, 1, 1};
   std::size_t size_ = 0;
   double cell_volume_ = 1.0;
};

/// One scalar unknown sampled at cell centers.
class Field
{
public:
   explicit Field(const Grid& grid, double value = 0.0);
   Field(const Grid& grid, std::vector<double> values);

   static Field from_function(const Grid& grid,
                              const std::function<double(const Point&)>& f);

   const Grid& grid() const { return grid_; }
   std::size_t size() const { return values_.size(); }
   std::span<const double> values() const { return values_; }
   std::span<double> values() { return values_; }
   double operator[](std::size_t i) const { return values_[i]; }
   double& operator[](std::size_t i) { return values_[i]; }

   double min() const;
   double max() const;
   bool all_finite() const;
   bool is_nonnegative() const;
   bool is_positive() const;

private:
   Grid grid_;
   std::vector<double> values_;
};

/// Values on interior faces, one array per axis.
class FaceData
{
public:
   explicit FaceData(const Grid& grid);

   const Grid& grid() const { return grid_; }
   std::span<const double> along(int axis) const { return faces_[axis]; }
   std::span<double> along(int axis) { return faces_[axis]; }
   /// max |value| over all faces
   double max_abs() const;
   std::size_t total_faces() const;

private:
   Grid grid_;
   std::array<std::vector<double>, 3> faces_;
};

enum class FaceMean
{
   arithmetic,
   geometric
};

/// Midpoint quadrature sum_i f_i * cell volume. Throws on non-finite input.
double integrate(const Field& f);

/// (f_right - f_left) / h on interior faces.
FaceData face_gradient(const Field& f);

/// Discrete divergence of a face flux with zero boundary flux.
Field div_faces(const FaceData& flux);

/// div_faces(face_gradient(f)); the standard 2*dim+1 point stencil.
Field laplacian_neumann(const Field& f);

/// (sum f_i^p * cell volume)^(1/p) for p > 0.
double lp_norm(const Field& f, double p);

/// Face average of a nonnegative cell field.
FaceData face_mean(const Field& f, FaceMean mode);

/// sum over faces of values times the dual (= cell) volume.
double face_quadrature(const FaceData& values);

/// |grad f|^2 at cell centers, from the squares of the two adjacent face
/// gradients per axis averaged into the cell.
Field cell_grad_sq(const Field& f);

/// Central difference at cell centers: mean of the two adjacent face
/// gradients (boundary faces count as zero).
Field cell_derivative(const Field& f, int axis);

/// Three-point second difference along one axis with Neumann closure.
Field second_difference(const Field& f, int axis);

// Pointwise helpers.
Field map(const Field& f, const std::function<double(double)>& op);
Field zip(const Field& a, const Field& b,
          const std::function<double(double, double)>& op);
FaceData zip(const FaceData& a, const FaceData& b,
             const std::function<double(double, double)>& op);

void require_same_grid(const Grid& a, const Grid& b);

} // namespace ntaxis
