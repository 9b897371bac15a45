#include "ntaxis/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "ntaxis/error.hpp"

namespace ntaxis {

Grid::Grid(const GridSpec& spec) : spec_(spec)
{
   if (spec.dim < 1 || spec.dim > 3)
   {
      throw Error(fmt::format("grid dimension must be 1, 2 or 3 (got {})", spec.dim));
   }
   for (int a = 0; a < spec.dim; ++a)
   {
      if (spec.cells[a] < 2)
      {
         throw Error(fmt::format("grid needs at least 2 cells per axis (axis {} has {})",
                                 a, spec.cells[a]));
      }
      if (!(spec.lengths[a] > 0.0) || !std::isfinite(spec.lengths[a]))
      {
         throw Error(fmt::format("grid length along axis {} must be positive", a));
      }
      extent_[a] = spec.cells[a];
      h_[a] = spec.lengths[a] / spec.cells[a];
   }
   // Inactive axes are normalized so that specs differing only there compare equal.
   for (int a = spec.dim; a < 3; ++a)
   {
      spec_.cells[a] = 1;
      spec_.lengths[a] = 1.0;
   }
   stride_[2] = 1;
   stride_[1] = static_cast<std::size_t>(extent_[2]);
   stride_[0] = stride_[1] * static_cast<std::size_t>(extent_[1]);
   size_ = stride_[0] * static_cast<std::size_t>(extent_[0]);
   cell_volume_ = 1.0;
   for (int a = 0; a < spec.dim; ++a)
   {
      cell_volume_ *= h_[a];
   }
}

double Grid::volume() const
{
   double v = 1.0;
   for (int a = 0; a < dim(); ++a)
   {
      v *= spec_.lengths[a];
   }
   return v;
}

std::size_t Grid::face_count(int axis) const
{
   if (axis >= dim())
   {
      return 0;
   }
   return size_ / static_cast<std::size_t>(extent_[axis]) *
          static_cast<std::size_t>(extent_[axis] - 1);
}

std::array<int, 3> Grid::multi_index(std::size_t cell) const
{
   std::array<int, 3> idx{0, 0, 0};
   for (int a = 0; a < dim(); ++a)
   {
      idx[a] = static_cast<int>((cell / stride_[a]) % static_cast<std::size_t>(extent_[a]));
   }
   return idx;
}

Point Grid::center(std::size_t cell) const
{
   const auto idx = multi_index(cell);
   Point x{0.0, 0.0, 0.0};
   for (int a = 0; a < dim(); ++a)
   {
      x[a] = (idx[a] + 0.5) * h_[a];
   }
   return x;
}

void require_same_grid(const Grid& a, const Grid& b)
{
   if (!(a == b))
   {
      throw Error("fields live on different grids");
   }
}

// ---------------------------------------------------------------------------

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
   if (values_.size() != grid_.size())
   {
      throw Error(fmt::format("field has {} values but the grid has {} cells",
                              values_.size(), grid_.size()));
   }
}

Field Field::from_function(const Grid& grid, const std::function<double(const Point&)>& f)
{
   Field out(grid);
   for (std::size_t i = 0; i < grid.size(); ++i)
   {
      out[i] = f(grid.center(i));
   }
   return out;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool Field::all_finite() const
{
   return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

bool Field::is_nonnegative() const
{
   return std::all_of(values_.begin(), values_.end(), [](double x) { return x >= 0.0; });
}

bool Field::is_positive() const
{
   return std::all_of(values_.begin(), values_.end(), [](double x) { return x > 0.0; });
}

// ---------------------------------------------------------------------------

FaceData::FaceData(const Grid& grid) : grid_(grid)
{
   for (int a = 0; a < grid.dim(); ++a)
   {
      faces_[a].assign(grid.face_count(a), 0.0);
   }
}

double FaceData::max_abs() const
{
   double m = 0.0;
   for (const auto& axis : faces_)
   {
      for (double x : axis)
      {
         m = std::max(m, std::abs(x));
      }
   }
   return m;
}

std::size_t FaceData::total_faces() const
{
   return faces_[0].size() + faces_[1].size() + faces_[2].size();
}

// ---------------------------------------------------------------------------

double integrate(const Field& f)
{
   double sum = 0.0;
   for (double x : f.values())
   {
      if (!std::isfinite(x))
      {
         throw Error("non-finite field");
      }
      sum += x;
   }
   return sum * f.grid().cell_volume();
}

FaceData face_gradient(const Field& f)
{
   const Grid& g = f.grid();
   FaceData out(g);
   for (int a = 0; a < g.dim(); ++a)
   {
      auto dst = out.along(a);
      const std::size_t s = g.stride(a);
      const double inv_h = 1.0 / g.h(a);
      g.for_each_face(a, [&](std::size_t face, std::size_t left) {
         dst[face] = (f[left + s] - f[left]) * inv_h;
      });
   }
   return out;
}

Field div_faces(const FaceData& flux)
{
   const Grid& g = flux.grid();
   Field out(g);
   for (int a = 0; a < g.dim(); ++a)
   {
      const auto src = flux.along(a);
      const std::size_t s = g.stride(a);
      const double inv_h = 1.0 / g.h(a);
      g.for_each_face(a, [&](std::size_t face, std::size_t left) {
         const double q = src[face] * inv_h;
         out[left] += q;
         out[left + s] -= q;
      });
   }
   return out;
}

Field laplacian_neumann(const Field& f) { return div_faces(face_gradient(f)); }

double lp_norm(const Field& f, double p)
{
   if (!(p > 0.0))
   {
      throw Error("lp_norm needs p > 0");
   }
   const bool integer_p = std::floor(p) == p;
   double sum = 0.0;
   for (double x : f.values())
   {
      if (!std::isfinite(x))
      {
         throw Error("non-finite field");
      }
      if (x < 0.0 && !integer_p)
      {
         throw Error("fractional power of negative value");
      }
      sum += std::pow(std::abs(x), p);
   }
   return std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

FaceData face_mean(const Field& f, FaceMean mode)
{
   const Grid& g = f.grid();
   FaceData out(g);
   for (int a = 0; a < g.dim(); ++a)
   {
      auto dst = out.along(a);
      const std::size_t s = g.stride(a);
      if (mode == FaceMean::arithmetic)
      {
         g.for_each_face(a, [&](std::size_t face, std::size_t left) {
            dst[face] = 0.5 * (f[left] + f[left + s]);
         });
      }
      else
      {
         g.for_each_face(a, [&](std::size_t face, std::size_t left) {
            dst[face] = std::sqrt(f[left] * f[left + s]);
         });
      }
   }
   return out;
}

double face_quadrature(const FaceData& values)
{
   double sum = 0.0;
   for (int a = 0; a < values.grid().dim(); ++a)
   {
      for (double x : values.along(a))
      {
         sum += x;
      }
   }
   return sum * values.grid().cell_volume();
}

Field cell_grad_sq(const Field& f)
{
   const Grid& g = f.grid();
   Field out(g);
   for (int a = 0; a < g.dim(); ++a)
   {
      const std::size_t s = g.stride(a);
      const double inv_h = 1.0 / g.h(a);
      g.for_each_face(a, [&](std::size_t, std::size_t left) {
         const double d = (f[left + s] - f[left]) * inv_h;
         const double half_sq = 0.5 * d * d;
         out[left] += half_sq;
         out[left + s] += half_sq;
      });
   }
   return out;
}

Field cell_derivative(const Field& f, int axis)
{
   const Grid& g = f.grid();
   Field out(g);
   const std::size_t s = g.stride(axis);
   const double inv_h = 1.0 / g.h(axis);
   g.for_each_face(axis, [&](std::size_t, std::size_t left) {
      const double half = 0.5 * (f[left + s] - f[left]) * inv_h;
      out[left] += half;
      out[left + s] += half;
   });
   return out;
}

Field second_difference(const Field& f, int axis)
{
   const Grid& g = f.grid();
   Field out(g);
   const std::size_t s = g.stride(axis);
   const double inv_h2 = 1.0 / (g.h(axis) * g.h(axis));
   g.for_each_face(axis, [&](std::size_t, std::size_t left) {
      const double d = (f[left + s] - f[left]) * inv_h2;
      out[left] += d;
      out[left + s] -= d;
   });
   return out;
}

Field map(const Field& f, const std::function<double(double)>& op)
{
   Field out(f.grid());
   for (std::size_t i = 0; i < f.size(); ++i)
   {
      out[i] = op(f[i]);
   }
   return out;
}

Field zip(const Field& a, const Field& b, const std::function<double(double, double)>& op)
{
   require_same_grid(a.grid(), b.grid());
   Field out(a.grid());
   for (std::size_t i = 0; i < a.size(); ++i)
   {
      out[i] = op(a[i], b[i]);
   }
   return out;
}

FaceData zip(const FaceData& a, const FaceData& b, const std::function<double(double, double)>& op)
{
   require_same_grid(a.grid(), b.grid());
   FaceData out(a.grid());
   for (int ax = 0; ax < a.grid().dim(); ++ax)
   {
      const auto x = a.along(ax);
      const auto y = b.along(ax);
      auto z = out.along(ax);
      for (std::size_t i = 0; i < z.size(); ++i)
      {
         z[i] = op(x[i], y[i]);
      }
   }
   return out;
}

} // namespace ntaxis
