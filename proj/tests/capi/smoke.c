/* Copyright 2026 The Compromise Authors
  
   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at
  
        http://www.apache.org/licenses/LICENSE-2.0
  
   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* Plain C client: parse a configuration, solve, print the table. */

#include <stdio.h>
#include <string.h>

#include "compromise/compromise.h"

static const char* kConfig =
    "space.kind = interval\n"
    "pref1.kind = euclidean\n"
    "pref1.ideal = 0\n"
    "pref2.kind = euclidean\n"
    "pref2.ideal = 0.5\n";

int main(void) {
  cmp_config* cfg = NULL;
  cmp_report* rep = NULL;
  int ok;
  if (cmp_config_parse(kConfig, &cfg) != CMP_OK) {
    fprintf(stderr, "parse: %s\n", cmp_last_error());
    return 1;
  }
  if (cmp_solve(cfg, &rep) != CMP_OK) {
    fprintf(stderr, "solve: %s\n", cmp_last_error());
    cmp_config_free(cfg);
    return 1;
  }
  fputs(cmp_report_table(rep), stdout);
  ok = cmp_report_passed(rep) && cmp_report_row_count(rep) == 1 &&
       strstr(cmp_report_table(rep), "0.3333") != NULL;
  cmp_report_free(rep);
  cmp_config_free(cfg);
  return ok ? 0 : 1;
}
