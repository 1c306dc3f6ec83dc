#include "hmrkit/hmrkit.h"

#include "hmrkit/commands.hpp"
#include "hmrkit/index_grading.hpp"

#include <limits>
#include <memory>

struct hmr_context {
  std::string last_error;
  std::string report;
};

struct hmr_complex {
  hmrkit::BlockDifferentials blocks;
  hmrkit::ThreeComplexes complexes;
};

struct hmr_cw {
  hmrkit::EquivariantCWData data;
};

namespace {

using hmrkit::ErrorCode;

template <class F>
hmr_status guarded(hmr_context* ctx, F&& body)
{
  if (!ctx)
    return HMR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    body();
    return HMR_OK;
  } catch (const hmrkit::Error& e) {
    ctx->last_error = hmrkit::error_object(e.code(), e.what()).dump();
    return static_cast<hmr_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = hmrkit::error_object(ErrorCode::MalformedJson, e.what()).dump();
    return HMR_MALFORMED_JSON;
  } catch (const std::exception& e) {
    ctx->last_error = hmrkit::error_object(ErrorCode::Internal, e.what()).dump();
    return HMR_INTERNAL;
  }
}

void need(const void* p, const char* what)
{
  if (!p)
    hmrkit::fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

std::uint64_t to_u64(const hmrkit::Integer& x)
{
  if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
    hmrkit::fail(ErrorCode::InvalidArgument, "value does not fit in 64 bits");
  return static_cast<std::uint64_t>(x);
}

}

extern "C" {

const char* hmr_version(void) { return "0.1.0"; }

const char* hmr_status_name(hmr_status s)
{
  return s == HMR_OK ? "Ok" : hmrkit::error_name(static_cast<ErrorCode>(s));
}

hmr_context* hmr_context_create(void) { return new (std::nothrow) hmr_context(); }

void hmr_context_destroy(hmr_context* ctx) { delete ctx; }

const char* hmr_last_error(const hmr_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

hmr_status hmr_run(hmr_context* ctx, const char* command, const char* params_json, const char** report_json)
{
  return guarded(ctx, [&] {
    need(command, "command");
    need(report_json, "report_json");
    hmrkit::Json params = params_json && *params_json ? hmrkit::parse_json(params_json) : hmrkit::Json::object();
    ctx->report = hmrkit::run_command(command, params).dump();
    *report_json = ctx->report.c_str();
  });
}

hmr_status hmr_complex_from_json(hmr_context* ctx, const char* blocks_json, hmr_complex** out)
{
  return guarded(ctx, [&] {
    need(blocks_json, "blocks_json");
    need(out, "out");
    auto c = std::make_unique<hmr_complex>();
    c->blocks = hmrkit::blocks_from_json(hmrkit::parse_json(blocks_json));
    c->complexes = hmrkit::assemble(c->blocks);
    *out = c.release();
  });
}

void hmr_complex_destroy(hmr_complex* c) { delete c; }

hmr_status hmr_complex_verify(hmr_context* ctx, const hmr_complex* c, int* ok)
{
  return guarded(ctx, [&] {
    need(c, "complex");
    need(ok, "ok");
    bool good = hmrkit::verify_d_squared(c->complexes);
    if (good)
      good = hmrkit::les_exactness(c->complexes, hmrkit::les_maps(c->blocks)).exact;
    *ok = good ? 1 : 0;
  });
}

hmr_status hmr_complex_rank(hmr_context* ctx, const hmr_complex* c, hmr_flavor f, int64_t grading, size_t* rank)
{
  return guarded(ctx, [&] {
    need(c, "complex");
    need(rank, "rank");
    if (f != HMR_CHECK && f != HMR_HAT && f != HMR_BAR)
      hmrkit::fail(ErrorCode::InvalidArgument, "unknown flavor");
    const auto fl = f == HMR_CHECK ? hmrkit::Flavor::Check : f == HMR_HAT ? hmrkit::Flavor::Hat : hmrkit::Flavor::Bar;
    auto h = hmrkit::homology(c->complexes, fl);
    auto it = h.find(grading);
    *rank = it == h.end() ? 0 : it->second;
  });
}

hmr_status hmr_cw_from_json(hmr_context* ctx, const char* cw_json, hmr_cw** out)
{
  return guarded(ctx, [&] {
    need(cw_json, "cw_json");
    need(out, "out");
    auto w = std::make_unique<hmr_cw>();
    w->data = hmrkit::cw_from_json(hmrkit::parse_json(cw_json));
    *out = w.release();
  });
}

hmr_status hmr_cw_builtin(hmr_context* ctx, const char* name, hmr_cw** out)
{
  return guarded(ctx, [&] {
    need(name, "name");
    need(out, "out");
    auto w = std::make_unique<hmr_cw>();
    w->data = hmrkit::builtin_cw_fixture(name);
    *out = w.release();
  });
}

void hmr_cw_destroy(hmr_cw* cw) { delete cw; }

hmr_status hmr_cw_census_size(hmr_context* ctx, const hmr_cw* cw, uint64_t* size)
{
  return guarded(ctx, [&] {
    need(cw, "cw");
    need(size, "size");
    *size = to_u64(hmrkit::real_spinc_torsor(cw->data).size);
  });
}

hmr_status hmr_cw_admits(hmr_context* ctx, const hmr_cw* cw, const int64_t* c1, size_t len, int* admits)
{
  return guarded(ctx, [&] {
    need(cw, "cw");
    need(admits, "admits");
    if (len)
      need(c1, "c1");
    hmrkit::IntVector v(c1, c1 + len);
    *admits = hmrkit::admits_real_structure(cw->data, v) ? 1 : 0;
  });
}

hmr_status hmr_closed4_index(hmr_context* ctx, int64_t c1_sq, int64_t sigma, uint64_t b1, uint64_t bplus, uint64_t b0,
                             int64_t* index)
{
  return guarded(ctx, [&] {
    need(index, "index");
    *index = hmrkit::closed4_index({c1_sq, sigma, b1, bplus, b0});
  });
}

hmr_status hmr_loop_grading_shift(hmr_context* ctx, int64_t pairing, int64_t* shift)
{
  return guarded(ctx, [&] {
    need(shift, "shift");
    *shift = hmrkit::loop_grading_shift(pairing);
  });
}

hmr_status hmr_branched_cover(hmr_context* ctx, const int64_t* seifert, size_t n, uint64_t* order, size_t* b1)
{
  return guarded(ctx, [&] {
    need(order, "order");
    need(b1, "b1");
    if (n)
      need(seifert, "seifert");
    std::vector<std::vector<long long>> rows(n, std::vector<long long>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        rows[i][j] = seifert[i * n + j];
    auto r = hmrkit::branched_cover_invariants(hmrkit::IntMatrix::from_rows(rows));
    *order = to_u64(r.order);
    *b1 = r.b1;
  });
}

}
