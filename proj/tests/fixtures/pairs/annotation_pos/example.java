public List load() {
  return items;
}
