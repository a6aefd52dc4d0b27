#include <benchmark/benchmark.h>

#include "crgeo/boundary_system.hpp"
#include "crgeo/sheaves.hpp"

using namespace crgeo;

namespace {

Poly V(int nz, VarId v) { return Poly::var(nz, v); }
Poly abs2(int nz, int j) { return V(nz, VarId::z(j)) * V(nz, VarId::zb(j)); }

Hypersurface dangelo(int order) {
  int nz = 2;
  Poly z1 = V(nz, VarId::z(0)), z2 = V(nz, VarId::z(1)), w = V(nz, VarId::w());
  Poly a = z1.pow(2) - w * z2;
  Poly rho = a * a.conj() + abs2(nz, 1).pow(2) - w - V(nz, VarId::wb());
  return Hypersurface::at_point(rho, 3, AmbientPoint::origin(3), order);
}

Poly dense_poly(int nz, int deg) {
  Poly p(nz);
  long c = 1;
  for (int d = 0; d <= deg; ++d) {
    Poly layer = Poly::constant(nz, GaussianRational(1));
    for (int k = 0; k < d; ++k)
      layer = layer * (V(nz, VarId::z(k % nz)) + V(nz, VarId::zb((k + 1) % nz)));
    p += layer * GaussianRational::rational(c, c + 2);
    c += 3;
  }
  return p;
}

void BM_PolyMultiply(benchmark::State& state) {
  Poly a = dense_poly(2, static_cast<int>(state.range(0)));
  Poly b = dense_poly(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(6)->Arg(8);

void BM_GraphSolveImplicit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dangelo(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GraphSolveImplicit)->Arg(6)->Arg(8);

void BM_LeviMatrixFn(benchmark::State& state) {
  Hypersurface h = dangelo(6);
  for (auto _ : state) benchmark::DoNotOptimize(levi_matrix_fn(h));
}
BENCHMARK(BM_LeviMatrixFn);

void BM_TensorContext(benchmark::State& state) {
  Hypersurface h = dangelo(6);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_context(h));
}
BENCHMARK(BM_TensorContext);

void BM_Tau4Eval(benchmark::State& state) {
  Hypersurface h = dangelo(6);
  TensorContext ctx = tensor_context(h);
  std::vector<GaussianRational> e1(2);
  e1[0] = GaussianRational(1);
  TangentVec v4 = TangentVec::hol_vec(e1), v3 = TangentVec::anti_vec(e1);
  for (auto _ : state) benchmark::DoNotOptimize(tau4(ctx, v4, v3, e1, e1));
}
BENCHMARK(BM_Tau4Eval);

void BM_QuarticNormalForm(benchmark::State& state) {
  Hypersurface h = dangelo(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quartic_normal_form(h));
}
BENCHMARK(BM_QuarticNormalForm)->Arg(6)->Arg(8);

void BM_BoundaryStep(benchmark::State& state) {
  Hypersurface h = dangelo(6);
  TensorContext ctx = tensor_context(h);
  for (auto _ : state) {
    BoundarySystem bs = init_boundary_system(h);
    benchmark::DoNotOptimize(boundary_system_step(bs, ctx.frame[0]));
  }
}
BENCHMARK(BM_BoundaryStep);

void BM_SheafMembershipAtPoint(benchmark::State& state) {
  Hypersurface tq = Hypersurface::from_graph(abs2(2, 0).pow(2) + abs2(2, 1).pow(2), 3, 6);
  XField L = x_frame_basis(tq, 0).scaled(V(2, VarId::z(1)).pow(2));
  ChartPoint p{{GaussianRational::rational(1, 2), GaussianRational(0)}, GaussianRational(0)};
  for (auto _ : state) benchmark::DoNotOptimize(in_kernel_up_to_order1_at(tq, L, p));
}
BENCHMARK(BM_SheafMembershipAtPoint);

} // namespace

BENCHMARK_MAIN();
