if (name != null) {
  process(name);
}
