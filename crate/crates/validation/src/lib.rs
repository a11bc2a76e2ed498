//! Holds the `acceptance` test target, which prints one PASS/FAIL line per
//! acceptance criterion. It lives in its own package so the report runs
//! after the library and CLI suites.
