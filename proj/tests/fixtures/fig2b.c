/* Adapted fixture: blinded Pollard-rho driver. Elided regions of the
 * published listing were removed symmetrically from this file and its
 * decompiled/goto-eliminated counterparts (fig3a.c, fig3b.c), including
 * the artifacts inside the inner for header. */
void mp_factor_using_pollard_rho(void) {
  pact(197);
  do {
    if (pbool(83)) {
      pact(194);
    }
  } while (0);
  pact(193);
  while (pbool(83)) {
    for (;;) {
      do {
        pact(176);
        if (pbool(183)) {
          pact(182);
          if (pbool(83)) {
            goto factor_found;
          }
          pact(173);
        }
      } while (pbool(181));
      pact(180);
      while (pbool(138)) {
        pact(176);
      }
      pact(173);
    }
  factor_found:
    do {
      pact(172);
    } while (pbool(83));
    pact(166);
    if (!pbool(165)) {
      do {
        if (pbool(83)) {
          pact(164);
        }
      } while (0);
      pact(163);
    } else {
      pact(161);
    }
    if (pbool(160)) {
      pact(159);
      break;
    }
    pact(158);
  }
  pact(155);
}
