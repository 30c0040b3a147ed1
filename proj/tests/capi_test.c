/*
 * Copyright 2026 The ltwist Authors
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

/* Exercises the C interface from plain C. */

#include <stdint.h>
#include <stdio.h>
#include <string.h>

#include "ltwist/ltwist.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

int main(void) {
  ltw_session* s = NULL;
  ltw_curve* c = NULL;
  char* str = NULL;
  int64_t v = 0;
  int w = 0, pass = 0;
  int32_t o2 = 0;

  EXPECT(strlen(ltw_version()) > 0);
  EXPECT(strcmp(ltw_status_name(LTW_UNKNOWN_CURVE), "UnknownCurve") == 0);
  EXPECT(ltw_session_new(&s) == LTW_OK);

  EXPECT(ltw_curve_open(s, "no-such-curve", 1, &c) == LTW_UNKNOWN_CURVE);
  EXPECT(c == NULL);
  EXPECT(strstr(ltw_last_error(), "no-such-curve") != NULL);

  EXPECT(ltw_curve_open(s, "11a1", 1, &c) == LTW_OK);
  EXPECT(ltw_curve_label(c, &str) == LTW_OK);
  EXPECT(strcmp(str, "11a1") == 0);
  ltw_string_free(str);
  EXPECT(ltw_curve_conductor(c, &v) == LTW_OK && v == 11);
  EXPECT(ltw_curve_ap(c, 13, &v) == LTW_OK && v == 4);
  EXPECT(ltw_curve_ap(c, 12, &v) == LTW_INVALID_ARGUMENT);

  EXPECT(ltw_curve_l_value(c, 192, -30, &str, &w) == LTW_OK);
  EXPECT(strncmp(str, "2.538418608559106843377589233", 29) == 0);
  EXPECT(w == 1);
  ltw_string_free(str);

  EXPECT(ltw_curve_twist_ratio(c, 5, 192, -30, &str, &o2) == LTW_OK);
  EXPECT(strcmp(str, "5") == 0);
  EXPECT(o2 == 0);
  ltw_string_free(str);
  EXPECT(ltw_curve_twist_ratio(c, -7, 192, -30, &str, &o2) == LTW_OK);
  EXPECT(strcmp(str, "0") == 0);
  EXPECT(o2 == INT32_MAX);
  ltw_string_free(str);
  EXPECT(ltw_curve_twist_ratio(c, 3, 192, -30, &str, &o2) == LTW_INVALID_ARGUMENT);
  EXPECT(ltw_curve_twist_ratio(c, -11, 192, -30, &str, &o2) == LTW_TWIST_NOT_COPRIME);
  EXPECT(ltw_curve_l_value(c, 40, -30, &str, &w) == LTW_INVALID_ARGUMENT);
  ltw_curve_free(c);

  EXPECT(ltw_run(s, "verify counterexamples", "{}", NULL, &str, &pass) == LTW_OK);
  EXPECT(pass == 1);
  EXPECT(strstr(str, "34a1") != NULL);
  {
    char* csv = NULL;
    char* back = NULL;
    EXPECT(ltw_report_to_csv(str, &csv) == LTW_OK);
    EXPECT(ltw_csv_to_results(csv, &back) == LTW_OK);
    EXPECT(back != NULL && back[0] == '[');
    ltw_string_free(csv);
    ltw_string_free(back);
  }
  ltw_string_free(str);

  EXPECT(ltw_run(s, "nonsense", "{}", "11a1", &str, &pass) == LTW_INVALID_ARGUMENT);
  EXPECT(ltw_run(s, "lvalue", "{\"precision_bits\": \"x\"}", "11a1", &str, &pass) == LTW_INVALID_ARGUMENT);
  EXPECT(ltw_session_load_table(s, "/nonexistent/table.txt") == LTW_IO_ERROR);
  EXPECT(ltw_session_labels(s, &str) == LTW_OK);
  EXPECT(strstr(str, "14a1") != NULL);
  ltw_string_free(str);
  EXPECT(ltw_commands(&str) == LTW_OK);
  EXPECT(strstr(str, "verify lemma21") != NULL);
  ltw_string_free(str);

  ltw_session_free(s);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C interface: all checks passed\n");
  return failures ? 1 : 0;
}
