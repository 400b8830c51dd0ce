/*
 * Copyright 2026 The MoMPCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>

#include "mompca/mompca.hpp"

// Runs the suite, then checks that every fit iterate produced along the way
// stayed orthonormal.
int main(int argc, char** argv) {
  doctest::Context context(argc, argv);
  const int status = context.run();
  if (context.shouldExit()) return status;
  const mompca::OrthonormalityAudit audit = mompca::orthonormality_audit();
  const bool ok = audit.worst <= 1e-10;
  std::printf("orthonormality audit: %zu iterates, worst ||V'V - I||_F = %.3e (%s)\n", audit.iterates, audit.worst,
              ok ? "ok" : "FAILED");
  return status != 0 ? status : (ok ? 0 : 1);
}
