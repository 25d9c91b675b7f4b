/* Assignment to the indicator inside both branches of an unrelated test. */
void factoring(void) {
  int x;
  if (y != 0) {
    x = 42;
    pact(1);
  } else {
    x = 42;
    pact(2);
  }
}
