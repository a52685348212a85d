@Override
public void onClick(View view) {
  Intent intent = new Intent(getActivity(), DetailActivity.class);
  intent.putExtra(EXTRA_ID, itemId);
  startActivity(intent);
}
