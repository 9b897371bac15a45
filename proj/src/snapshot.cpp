#include "ntaxis/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "ntaxis/error.hpp"

namespace ntaxis {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[] = {'D', 'T', 'X', 'S', '1'};
constexpr std::size_t kHeaderBytes = sizeof(kMagic) + 4 * sizeof(std::int32_t) + 8 * sizeof(double);

template <class T>
void put(std::string& out, T value)
{
   char bytes[sizeof(T)];
   std::memcpy(bytes, &value, sizeof(T));
   out.append(bytes, sizeof(T));
}

class Reader
{
public:
   explicit Reader(const std::string& data) : data_(data) {}

   template <class T>
   T get()
   {
      T value;
      std::memcpy(&value, data_.data() + pos_, sizeof(T));
      pos_ += sizeof(T);
      return value;
   }

   std::size_t pos() const { return pos_; }

private:
   const std::string& data_;
   std::size_t pos_ = sizeof(kMagic);
};

std::string shape(const GridSpec& g)
{
   std::string s = std::to_string(g.cells[0]);
   for (int a = 1; a < g.dim; ++a)
   {
      s += "x" + std::to_string(g.cells[a]);
   }
   return s;
}

} // namespace

void save_snapshot(const State& state, const Params& params, const std::filesystem::path& path)
{
   const GridSpec& g = state.u.grid().spec();
   std::string out(kMagic, sizeof(kMagic));
   put<std::int32_t>(out, g.dim);
   for (int a = 0; a < 3; ++a)
   {
      put<std::int32_t>(out, g.cells[a]);
   }
   for (int a = 0; a < 3; ++a)
   {
      put<double>(out, g.lengths[a]);
   }
   for (double x : {state.t, params.alpha, params.chi, params.ell, params.epsilon})
   {
      put<double>(out, x);
   }
   for (const Field* f : {&state.u, &state.v})
   {
      const auto values = f->values();
      out.append(reinterpret_cast<const char*>(values.data()), values.size_bytes());
   }

   std::ofstream file(path, std::ios::binary | std::ios::trunc);
   file.write(out.data(), static_cast<std::streamsize>(out.size()));
   if (!file)
   {
      throw Error(fmt::format("cannot write snapshot {}", path.string()));
   }
}

Snapshot load_snapshot(const std::filesystem::path& path)
{
   std::ifstream file(path, std::ios::binary);
   if (!file)
   {
      throw Error(fmt::format("cannot read snapshot {}", path.string()));
   }
   const std::string data((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
   if (data.size() < sizeof(kMagic) || std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
   {
      throw Error("not a snapshot");
   }
   if (data.size() < kHeaderBytes)
   {
      throw Error("corrupt snapshot");
   }

   Reader in(data);
   Snapshot snap;
   snap.grid.dim = in.get<std::int32_t>();
   for (int a = 0; a < 3; ++a)
   {
      snap.grid.cells[a] = in.get<std::int32_t>();
   }
   for (int a = 0; a < 3; ++a)
   {
      snap.grid.lengths[a] = in.get<double>();
   }
   snap.t = in.get<double>();
   snap.alpha = in.get<double>();
   snap.chi = in.get<double>();
   snap.ell = in.get<double>();
   snap.epsilon = in.get<double>();

   std::size_t cells = 1;
   bool header_ok = snap.grid.dim >= 1 && snap.grid.dim <= 3;
   for (int a = 0; a < 3 && header_ok; ++a)
   {
      header_ok = snap.grid.cells[a] >= 1 && snap.grid.cells[a] <= (1 << 20);
      cells *= static_cast<std::size_t>(snap.grid.cells[a]);
   }
   if (!header_ok || data.size() - in.pos() != 2 * cells * sizeof(double))
   {
      throw Error("corrupt snapshot");
   }
   snap.u.resize(cells);
   snap.v.resize(cells);
   std::memcpy(snap.u.data(), data.data() + in.pos(), cells * sizeof(double));
   std::memcpy(snap.v.data(), data.data() + in.pos() + cells * sizeof(double), cells * sizeof(double));
   return snap;
}

void require_snapshot_grid(const Snapshot& snap, const Grid& grid)
{
   if (!(snap.grid == grid.spec()))
   {
      throw Error(fmt::format("grid mismatch: snapshot {} vs config {}", shape(snap.grid),
                              shape(grid.spec())));
   }
}

State snapshot_state(const Snapshot& snap, const Grid& grid)
{
   require_snapshot_grid(snap, grid);
   State s(Field(grid, snap.u), Field(grid, snap.v));
   s.t = snap.t;
   return s;
}

} // namespace ntaxis
