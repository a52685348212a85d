try {
  String text = read(file);
  show(text);
} catch (IOException e) {
  e.printStackTrace();
}
