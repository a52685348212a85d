while (i < n) {
  i++;
}
