void uses_switch(void) {
  switch (x) {
  }
}
