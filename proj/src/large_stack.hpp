#pragma once

#include <pthread.h>

#include <exception>
#include <functional>
#include <stdexcept>

namespace sltl::detail {

// Deep tableau branches recurse once per node, so the search runs on a
// thread with a generous stack. Exceptions are carried back to the caller.
inline void run_on_large_stack(const std::function<void()>& fn, std::size_t bytes = std::size_t{1} << 30) {
  struct Ctx {
    const std::function<void()>* fn;
    std::exception_ptr err;
  } ctx{&fn, nullptr};
  auto tramp = [](void* p) -> void* {
    auto* c = static_cast<Ctx*>(p);
    try {
      (*c->fn)();
    } catch (...) {
      c->err = std::current_exception();
    }
    return nullptr;
  };
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t th;
  int rc = pthread_create(&th, &attr, tramp, &ctx);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(th, nullptr);
  if (ctx.err) std::rethrow_exception(ctx.err);
}

}  // namespace sltl::detail
